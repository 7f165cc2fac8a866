from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Project
    PROJECT_NAME: str = "Monopole Superintegrability Toolkit"
    APP_VERSION: str = "1.0.0"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_DIR: Path = Path("logs")
    LOG_TO_FILE: bool = True

    # Outputs
    OUTPUT_DIR: Path = Path("results")
    DEFAULT_SEED: int = 20240601

    model_config = SettingsConfigDict(
        env_prefix="MONOPOLE_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()
