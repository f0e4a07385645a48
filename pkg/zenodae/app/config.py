# zenodae/app/config.py
import os
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

if not os.getenv("ZENO_DAE_NO_DOTENV"):
    load_dotenv()


class Settings(BaseSettings):
    # Linear algebra tolerances (absolute, Frobenius)
    tol_exp: float = 1e-12
    rank_tol: float = 1e-10
    consistency_tol: float = 1e-10
    projection_tol: float = 1e-6

    # Ancilla checks
    moment_tol: float = 1e-8
    gauss_tol: float = 1e-8
    theta: float = 0.5

    # Dense matrices beyond this dimension are refused
    size_cap: int = 4096

    # Experiments
    seed: int = 42
    threads: int = 1
    slow_run_seconds: float = 60.0

    # Environment
    log_level: str = "INFO"

    model_config = SettingsConfigDict(env_file=".env", env_prefix="ZENO_DAE_", case_sensitive=False)


settings = Settings()
