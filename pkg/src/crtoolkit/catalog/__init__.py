from crtoolkit.catalog.entries import Catalog, CatalogEntry, Expectation, catalog, entry
from crtoolkit.catalog.families import FAMILIES, build, perfect_basis
from crtoolkit.catalog.verify import (
    ALL,
    EntryReport,
    VerificationReport,
    inequivalence_matrix,
    verify,
    verify_entry,
)
