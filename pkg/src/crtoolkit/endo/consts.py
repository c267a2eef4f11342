from sympy import Rational

# Modulus separating one real eigenvalue (below) from three (above)
MU0 = Rational(27, 4)

# Wire form of an infinite modulus
INFINITY = "inf"

LIGHT_CONE = "LIGHT_CONE"
EY = "EY"
EZ = "EZ"
EX = "EX"

# Classes of trace-free cyclic 3x3 endomorphisms
CLASSES = {
    LIGHT_CONE: "modulus infinite, characteristic roots in arithmetic progression",
    EY: "modulus below 27/4, one real and two complex roots",
    EZ: "modulus 27/4, a double real root",
    EX: "modulus above 27/4, three distinct real roots",
}

# Parameter scan ranges used by the numeric inversion
INVERSION_RANGES = {
    EY: (1e-6, 1e8),
    EX: (1e-9, 1e8),
}
INVERSION_GRID = 1201

# Range of the random integer entries tried by the cyclic vector search
CYCLIC_SEARCH_RANGE = (-5, 6)
