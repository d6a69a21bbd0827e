"""
Configuration management for gradeval
"""
import os
from pathlib import Path
from dotenv import load_dotenv
from pydantic import BaseModel

# Load environment variables
load_dotenv()

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent
DEMO_DATA_DIR = PROJECT_ROOT / "demo_data"
REPORTS_DIR = PROJECT_ROOT / "reports"


class SimulationConfig(BaseModel):
    """Dense state-vector engine configuration"""
    dense_cap_qubits: int = 10
    norm_tolerance: float = 1e-10
    measure_tolerance: float = 1e-8
    max_qubits: int = int(os.getenv("GRADEVAL_MAX_QUBITS", "24"))
    chunk_size: int = int(os.getenv("GRADEVAL_CHUNK_SIZE", "65536"))


class GradientConfig(BaseModel):
    """Gradient estimation parameters"""
    c: float = 2.0
    # 1/a^2 + 1/b <= 1/2304
    a_const: float = 72.0
    b_const: float = 4608.0
    log_base: int = 2
    allow_clamp: bool = os.getenv("GRADEVAL_ALLOW_CLAMP", "False").lower() == "true"


class OracleConfig(BaseModel):
    """Phase/probability oracle configuration"""
    mode: str = os.getenv("GRADEVAL_MODE", "analytic")
    phase_error: float = 0.0


class AppConfig(BaseModel):
    """Main application configuration"""
    simulation: SimulationConfig = SimulationConfig()
    gradient: GradientConfig = GradientConfig()
    oracle: OracleConfig = OracleConfig()
    default_seed: int = int(os.getenv("GRADEVAL_SEED", "20221"))
    schema_version: str = "gradeval/1"
    log_level: str = os.getenv("GRADEVAL_LOG_LEVEL", "WARNING")
    log_file: str = os.getenv("GRADEVAL_LOG_FILE", "")


# Global configuration instance
config = AppConfig()
