# constants.py

# JSON records
# Bumped whenever a record field changes meaning.
SCHEMA_VERSION = 1

# Map forms
FORM_TWO_LINEAR = "two-linear"
FORM_ONE_QUADRATIC = "one-quadratic"
FORMS = (FORM_TWO_LINEAR, FORM_ONE_QUADRATIC)

# Degeneracy classes
CLASS_GENERIC = "Generic"
CLASS_NO_MAPS = "NoMaps"
CLASS_REDUCED_DEGREE = "ReducedDegree"
CLASS_LAMBDA_POWER = "LambdaPowerFactor"
CLASS_ONE_MINUS_LAMBDA = "OneMinusLambdaFactor"
CLASS_SQUARE_ROOT = "SquareRootFactor"
CLASS_ALPHA_ZERO_ONLY = "AlphaZeroOnly"

# Pell families
PELL_SIX = "Six"
PELL_TEN_UNIT = "TenUnitReduced"
PELL_TEN_NORM_PLUS = "TenNormPlus"
PELL_TEN_NORM_MINUS = "TenNormMinus"

# CLI exit codes
EXIT_OK = 0
EXIT_EMPTY = 1
EXIT_USAGE = 2
