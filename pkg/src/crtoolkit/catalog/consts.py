import os

SCHEMA_VERSION = 1

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

# YAML fixtures; JSON documents load through the same safe_load
FIXTURE_EXTENSIONS = (".yml", ".yaml", ".json")

SOURCES = ("PAPER", "DERIVED")

TUBE_INVARIANTS = [
    "tangent_dim",
    "degree",
    "kernel_dims",
    "minimal",
    "conical",
    "witness",
    "algebra_degree",
    "bridge_dim",
    "bridge_solvable",
]

ENDO_INVARIANTS = [
    "cyclic",
    "modulus",
    "class",
    "arithmetic_progression",
    "aut_dim",
    "stability_order",
]

CRALGEBRA_INVARIANTS = [
    "jacobi",
    "dim",
    "I_dims",
    "II_brackets",
    "III_not_levi_flat",
    "IV_levi_degenerate",
    "V_two_nondegenerate",
    "effective",
    "minimal_generation",
    "solvable",
    "k",
    "derived_dim",
    "nilcenter_dim",
    "sl2_triple",
]

# reported but never compared
METADATA = ["hol_dim"]

VOCABULARY = set(TUBE_INVARIANTS + ENDO_INVARIANTS + CRALGEBRA_INVARIANTS + METADATA)

# tube degree against the degree of its CR algebra
CROSS_ORACLE = "ur_cross_oracle"

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
META = "metadata"
