import os
from dotenv import load_dotenv

load_dotenv()

# Logging Configuration
LOG_LEVEL = os.getenv("AKH_LOG_LEVEL", "WARNING").upper()

# Report Configuration
REPORT_SCHEMA_VERSION = os.getenv("AKH_REPORT_SCHEMA_VERSION", "1")
DEFAULT_FORMAT = os.getenv("AKH_DEFAULT_FORMAT", "table")

# Sweep Configuration
SWEEP_WORKERS = int(os.getenv("AKH_SWEEP_WORKERS", 1))

# Randomized structure sampling
RANDOM_SEED = int(os.getenv("AKH_RANDOM_SEED", 20240611))
RANDOM_SAMPLES = int(os.getenv("AKH_RANDOM_SAMPLES", 20))
RANDOM_ENTRY_BOUND = int(os.getenv("AKH_RANDOM_ENTRY_BOUND", 3))

# Catalog export
CATALOG_EXPORT_SUFFIX = os.getenv("AKH_CATALOG_EXPORT_SUFFIX", ".spec")

SUPPORTED_FORMATS = ["table", "json"]
