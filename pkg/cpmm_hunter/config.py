"""Configuration management using environment variables."""

from decimal import Decimal
from typing import TYPE_CHECKING, Any, List, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

if TYPE_CHECKING:
    from cpmm_hunter.synth.models import SearchConfig


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="CPMM_HUNTER_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"
    log_dir: str = "logs"
    log_to_file: bool = True

    # Scan orchestration
    workers: int = Field(4, ge=1)
    timeout_secs: float = Field(1200.0, gt=0)  # per target
    min_usd: Decimal = Decimal("1000")

    # Search
    profit_threshold_usd: Decimal = Decimal("1")
    rep_cap: int = 256
    limited_rep_cap: int = 8
    stagnation_limit: int = 3
    budget_fractions: List[Decimal] = Field(
        default_factory=lambda: [Decimal("0.01"), Decimal("0.1"), Decimal("1"), Decimal("2")]
    )
    random_rep_trials: int = 3
    seed: int = 0

    # Brute-force oracle
    oracle_bound: int = Field(64, ge=1)

    def search_config(self, **overrides: Any) -> "SearchConfig":
        """Build a validated SearchConfig from these settings.

        Args:
            **overrides: SearchConfig fields that take precedence (CLI flags)

        Returns:
            Search configuration
        """
        from cpmm_hunter.synth.models import SearchConfig

        values = {
            "rep_cap": self.rep_cap,
            "limited_rep_cap": self.limited_rep_cap,
            "stagnation_limit": self.stagnation_limit,
            "budget_fractions": list(self.budget_fractions),
            "profit_threshold_usd": self.profit_threshold_usd,
            "random_rep_trials": self.random_rep_trials,
            "seed": self.seed,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        if values["limited_rep_cap"] > values["rep_cap"]:
            values["limited_rep_cap"] = values["rep_cap"]
        return SearchConfig(**values)


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
