from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="YBSOLVE_",
        env_file=".env",
        extra="ignore"  # Ignore extra fields in .env
    )

    # Group engines
    max_group_enum: int = 1_000_000  # full element enumeration bound
    aut_max_n: int = 10

    # Isomorphism search and canonical forms
    iso_max_n: int = 160
    canon_max_n: int = 10
    canon_max_candidates: int = 4_000_000

    # Enumeration
    enum_max_n: int = 7
    enum_hard_max_n: int = 8
    workers: int = 1

    # Constructions
    max_depth: int = 12
    max_construct_n: int = 4096
    verify_max_n: int = 600
    verify_constructions: bool = True

    debug_checks: bool = False

    log_level: str = "INFO"
    log_file: Optional[str] = None


settings = Settings()
