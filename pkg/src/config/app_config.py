from pathlib import Path

APP_NAME = "partition-codes"
APP_DESCRIPTION = "Prefix-free codes from partition chains, code trees and their entropies"

# Enumeration
MAX_ENUMERATION_UNIVERSE = 12  # Bell(12) = 4,213,597

# Selection dynamics
DEFAULT_THRESHOLD_FACTOR = 4  # epsilon = 1 / (factor * |candidates|)
DEFAULT_MAX_ROUNDS = 10_000
TRACE_STATE_LIMIT = 4096  # larger selectionist runs record sizes only

# Marble simulation
MARBLE_BIT_GENERATOR = "PCG64"

# Reports
REAL_PLACES = 12

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_DECODE = 3

# Logging
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVEL = "WARNING"

# Bundled data
DATA_DIR = Path(__file__).resolve().parent / "data"
CODON_TABLE_PATH = DATA_DIR / "standard_codon_table.tsv"
RNA_ALPHABET = ("U", "C", "A", "G")
