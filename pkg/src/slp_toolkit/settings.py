import os
from typing import Literal

from pydantic import BaseModel, Field

Flavor = Literal["log", "const"]

ENV_PREFIX = "SLP_TOOLKIT_"


class Settings(BaseModel):
    """Runtime configuration, read from ``SLP_TOOLKIT_*`` environment variables."""

    max_expand: int = Field(default=10_000_000, ge=1, description="Default guard for full expansion")
    oracle_cap: int = Field(default=1_000_000, ge=1, description="Largest N the uncompressed oracle accepts")
    flavor: Flavor = Field(default="log", description="Default packed tree color flavor for ls/lp/match")
    repair_rounds: int = Field(default=512, ge=0, description="Pair replacement rounds in ingest_text")
    log_level: str = Field(default="WARNING", description="Level for the slp_toolkit logger")

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from the process environment (``load_dotenv`` runs in main)."""
        values = {}
        for name in cls.model_fields:
            raw = os.environ.get(ENV_PREFIX + name.upper())
            if raw is not None and raw != "":
                values[name] = raw
        return cls.model_validate(values)


def get_settings() -> Settings:
    """Utility to get the settings for the current environment."""
    return Settings.from_env()
