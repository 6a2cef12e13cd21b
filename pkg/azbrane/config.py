"""Application configuration."""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()


def _int_setting(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError:
        raise RuntimeError(f"Invalid integer for {name}: {raw!r}")


# App settings
APP_NAME = os.getenv("APP_NAME", "azbrane - Azumaya D-brane calculator")
APP_VERSION = "1.0.0"
DEBUG = os.getenv("DEBUG", "false").lower() == "true"
LOG_LEVEL = "DEBUG" if DEBUG else os.getenv("LOG_LEVEL", "WARNING").upper()

# Randomized procedures
DEFAULT_SEED = _int_setting("DEFAULT_SEED", "0")

# Vanishing ideal degree bound; 0 means "use the rank r"
DEFAULT_DEGREE_BOUND = _int_setting("DEFAULT_DEGREE_BOUND", "0")

# Truncated Weyl-algebra module
WEYL_DEGREE_CAP = _int_setting("WEYL_DEGREE_CAP", "16")

# Conjugacy test
CONJUGACY_SYMBOLIC_MAX_RANK = _int_setting("CONJUGACY_SYMBOLIC_MAX_RANK", "4")
CONJUGACY_RANDOM_TRIALS = _int_setting("CONJUGACY_RANDOM_TRIALS", "20")

# Scenario corpus
SCENARIO_CORPUS = Path(
    os.getenv("SCENARIO_CORPUS", str(Path(__file__).parent / "data" / "scenarios.json"))
)
SCENARIO_WORKERS = _int_setting("SCENARIO_WORKERS", "4")

# HTTP server
API_HOST = os.getenv("API_HOST", "127.0.0.1")
API_PORT = _int_setting("API_PORT", "8000")
API_RELOAD = os.getenv("API_RELOAD", "false").lower() == "true"

if WEYL_DEGREE_CAP < 2:
    raise RuntimeError("WEYL_DEGREE_CAP must be at least 2")
if SCENARIO_WORKERS < 1:
    raise RuntimeError("SCENARIO_WORKERS must be positive")
