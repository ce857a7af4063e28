from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    ROW_SUM_TOLERANCE: float = 1e-9
    ROUTE_TOLERANCE: float = 1e-12
    CLOSED_FORM_TOLERANCE: float = 1e-9

    BINOMIAL_R_EPSILON: float = 1e-14
    CANCELLATION_R_THRESHOLD: float = 0.9
    CANCELLATION_N_THRESHOLD: int = 40
    CLOSED_FORM_GUARD_DIGITS: int = 20

    MAX_ENUMERATED_PATHS: int = 10_000_000

    DEFAULT_SAMPLES: int = 100_000
    DEFAULT_SEED: int = 20240101
    SIMULATION_CHUNK_SIZE: int = 65_536
    SIMULATION_WORKERS: int = 1

    LOG_LEVEL: str = "INFO"

    model_config = SettingsConfigDict(env_file=".env", env_prefix="OCCUPANCY_")

settings = Settings()
