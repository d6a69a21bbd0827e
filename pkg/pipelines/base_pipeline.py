"""
Base Pipeline class for all estimators
"""
from abc import ABC, abstractmethod
from typing import Dict, Any
from utils.logger import pipeline_logger
import time


class BasePipeline(ABC):
    """Abstract base class for all pipelines"""

    def __init__(self, name: str, role: str):
        self.name = name
        self.role = role
        self.status = "idle"
        self.execution_time = 0.0
        self.results = None
        pipeline_logger.info(f"Initialized {name} pipeline")

    @abstractmethod
    def execute(self, inputs: Dict[str, Any]) -> Dict[str, Any]:
        """Execute pipeline task"""
        pass

    def run(self, inputs: Dict[str, Any]) -> Dict[str, Any]:
        """Run pipeline with timing and status tracking"""
        pipeline_logger.info(f"{self.name} starting execution")
        self.status = "running"
        start_time = time.perf_counter()

        try:
            self.results = self.execute(inputs)
            self.status = "completed"
            pipeline_logger.info(f"{self.name} completed successfully")
        except Exception as e:
            self.status = "failed"
            pipeline_logger.error(f"{self.name} failed: {str(e)}")
            raise
        finally:
            self.execution_time = time.perf_counter() - start_time
            pipeline_logger.info(f"{self.name} execution time: {self.execution_time:.2f}s")

        return self.results

    def get_status(self) -> Dict[str, Any]:
        """Get current pipeline status"""
        return {
            'name': self.name,
            'role': self.role,
            'status': self.status,
            'execution_time': self.execution_time
        }
