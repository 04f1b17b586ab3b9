import os
from dotenv import load_dotenv

load_dotenv()

class Settings:
    # Application settings
    LOG_LEVEL: str = os.environ.get("IGAMES_LOG_LEVEL", "INFO")
    OUT_DIR: str = os.environ.get("IGAMES_OUT_DIR", "results")
    SEED: int = int(os.environ.get("IGAMES_SEED", "7"))
    WORKERS: int = int(os.environ.get("IGAMES_WORKERS", "1"))

    # Simulation protocol
    SCENARIOS: int = int(os.environ.get("IGAMES_SCENARIOS", "100"))
    EPOCHS: int = int(os.environ.get("IGAMES_EPOCHS", "50"))
    CRASH_DISTANCE: float = float(os.environ.get("IGAMES_CRASH_DISTANCE", "5.0"))
    EGO_START_DISTANCE: float = float(os.environ.get("IGAMES_EGO_START_DISTANCE", "40.0"))
    TARGET_DISTANCE_MIN: float = float(os.environ.get("IGAMES_TARGET_DISTANCE_MIN", "42.0"))
    TARGET_DISTANCE_MAX: float = float(os.environ.get("IGAMES_TARGET_DISTANCE_MAX", "70.0"))
    INITIAL_SPEED: float = float(os.environ.get("IGAMES_INITIAL_SPEED", "4.0"))
    LANE_OFFSET: float = float(os.environ.get("IGAMES_LANE_OFFSET", "3.5"))

    # Cost function
    DESIRED_SPEED: float = float(os.environ.get("IGAMES_DESIRED_SPEED", "10.0"))
    SAFE_DISTANCE: float = float(os.environ.get("IGAMES_SAFE_DISTANCE", "6.0"))
    BETA: float = float(os.environ.get("IGAMES_BETA", "1000.0"))
    DT: float = float(os.environ.get("IGAMES_DT", "0.5"))
    HORIZON_STEPS: int = int(os.environ.get("IGAMES_HORIZON_STEPS", "8"))

    # Solvers
    MAX_SWEEPS: int = int(os.environ.get("IGAMES_MAX_SWEEPS", "100"))
    PROFILE_CAP: int = int(os.environ.get("IGAMES_PROFILE_CAP", "10000000"))
    TIE_TOLERANCE: float = float(os.environ.get("IGAMES_TIE_TOLERANCE", "0.0"))

settings = Settings()
