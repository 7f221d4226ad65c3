"""
Configuration settings for the topological cryptogroup toolkit
"""
import os
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


class Settings:
    # Logging Configuration
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None

    # File Paths
    BASE_DIR: str = os.path.dirname(os.path.abspath(__file__))
    DATA_DIR: str = os.path.join(os.path.dirname(BASE_DIR), "data")
    FIXTURES_DIR: str = os.path.join(DATA_DIR, "fixtures")

    # Search Limits
    SUBCRYPTO_CAP: int = 20  # largest n accepted by the subcryptogroup enumerator
    ORACLE_MAX_N: int = 12  # exhaustive 2^n oracles only run up to here
    EXHAUSTIVE_SUBSET_MAX_N: int = 8  # above this, subsets are sampled
    SUBSET_SAMPLE_CAP: int = 256
    CONFIG_SAMPLE_COUNT: int = 40  # (x, y, U) samples per instance for star identities
    OPEN_ENUMERATION_CAP: int = 4096

    # Corpus Configuration
    RANDOM_SEED: int = 20240611
    CORPUS_RANDOM_TOPOLOGIES: int = 3


# Global settings instance
settings = Settings()

_INT_SETTINGS = (
    "SUBCRYPTO_CAP",
    "ORACLE_MAX_N",
    "EXHAUSTIVE_SUBSET_MAX_N",
    "SUBSET_SAMPLE_CAP",
    "CONFIG_SAMPLE_COUNT",
    "OPEN_ENUMERATION_CAP",
    "RANDOM_SEED",
    "CORPUS_RANDOM_TOPOLOGIES",
)


# Environment variable overrides
def load_env_settings():
    """Load settings from environment variables if available"""
    if os.getenv("LOG_LEVEL"):
        settings.LOG_LEVEL = os.getenv("LOG_LEVEL").upper()

    if os.getenv("LOG_FILE"):
        settings.LOG_FILE = os.getenv("LOG_FILE")

    if os.getenv("FIXTURES_DIR"):
        settings.FIXTURES_DIR = os.getenv("FIXTURES_DIR")

    for name in _INT_SETTINGS:
        value = os.getenv(name)
        if value:
            setattr(settings, name, int(value))


# Load environment settings on import
load_env_settings()
