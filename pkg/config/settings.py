import os
from dotenv import load_dotenv

load_dotenv()


def _flag(raw):
    return str(raw).strip().lower() in ("1", "true", "yes", "on")


class FreudenthalConfig:
    SEED = int(os.getenv('FMZ_SEED', 0))
    HEIGHT = int(os.getenv('FMZ_HEIGHT', 10))
    SAMPLES = int(os.getenv('FMZ_SAMPLES', 1000))
    JOBS = int(os.getenv('FMZ_JOBS', 1))
    LOG_LEVEL = os.getenv('FMZ_LOG_LEVEL', 'WARNING')
    MAX_STEPS = int(os.getenv('FMZ_MAX_STEPS', 100000))
    CENSUS_LIMIT = int(os.getenv('FMZ_CENSUS_LIMIT', 2000000))
    # debug profile: every structure move re-checks its norm multiplier
    DEBUG_CHECKS = _flag(os.getenv('FMZ_DEBUG', '0'))
