from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Shift metric
    TRUNCATION_RADIUS: int = 32
    NUMERIC_SLACK: float = 1e-10

    # Exact search caps
    EXACT_COVER_MAX_POINTS: int = 1024
    EXACT_SEPARATED_MAX_CANDIDATES: int = 4096
    EXACT_KATOK_MAX_ATOMS: int = 1024

    # Candidate enumeration
    CANDIDATE_CAP: int = 1 << 18
    SAMPLE_SIZE: int = 4096
    MDIM_WORD_BUDGET: int = 1024

    # Metric verification
    METRIC_CHECK_MAX_POINTS: int = 256
    METRIC_CHECK_SAMPLES: int = 20000

    # Critical exponents
    BISECTION_TOL: float = 1e-3
    EXPONENT_CEILING: float = 8.0

    # Runs
    SEED: int = 0
    WORKERS: int = 1
    LOG_LEVEL: str = "INFO"
    SCHEMA_VERSION: int = 1

    # Phoenix
    TRACING_ENABLED: bool = False
    PHOENIX_COLLECTOR_ENDPOINT: str = "http://localhost:6006/v1/traces"
    PHOENIX_PROJECT_NAME: str = "mdimlab"

    model_config = {"env_file": ".env", "env_prefix": "MDIMLAB_", "extra": "ignore"}


settings = Settings()
