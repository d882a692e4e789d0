from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SweepSettings(BaseModel):
    """Configuration for the rule-soundness sweep."""

    samples_per_rule: int = 1000
    max_depth: int = 4


class SemanticSettings(BaseModel):
    """Configuration for the exhaustive semantic checker."""

    # input x store pairs; beyond this a check raises EnumerationTooLarge
    max_cases: int = 1_000_000


class Settings(BaseSettings):
    """Application settings for the stateproof checker."""

    LOG_LEVEL: str = Field(default="INFO", description="Logging level")

    DEFAULT_SIGNATURE: str = Field(
        default="locations i:{0,1} j:{0,1}",
        description="Signature used when a command is given no --signature and the input declares none",
    )
    DEFAULT_SEED: int = Field(default=20140711, description="Seed for randomized sweeps")

    OUTPUT_FORMAT: Literal["text", "json"] = Field(default="text", description="Report format on stdout")
    JSON_INDENT: int = Field(default=2, description="Indentation of JSON reports")

    sweep_config: SweepSettings = Field(default_factory=SweepSettings, description="Sweep configuration")
    semantic_config: SemanticSettings = Field(default_factory=SemanticSettings, description="Semantic checker")

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", env_nested_delimiter="__", extra="ignore"
    )


settings = Settings()
