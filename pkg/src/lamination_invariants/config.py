"""Configuration settings for lamination invariants."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Atlas Configuration
    lamination_atlas_path: str = "atlas.ndjson"
    atlas_format_version: int = 1
    record_schema_version: int = 1

    # Sweep Configuration
    default_max_period: int = Field(default=8, ge=1)
    default_depth: int = Field(default=16, ge=0)
    exhaustive_realization_limit: int = Field(default=12, ge=2)
    sample_point_count: int = Field(default=100, ge=1)

    # Rendering Configuration
    render_size: int = Field(default=600, gt=0)

    # Application Configuration
    app_name: str = "lamination-invariants"
    app_version: str = "0.1.0"
    log_level: str = "WARNING"


# Global settings instance
settings = Settings()
