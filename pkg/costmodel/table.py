"""
Cost tables for reports and CSV output
"""
from pathlib import Path
from typing import Iterable, List, Union

import pandas as pd

from utils.logger import cost_logger
from .expressions import CostRecord
from .queries import CostReport

Records = Union[CostReport, Iterable[Union[CostReport, CostRecord]]]

COLUMNS = ['scenario', 'method', 'quantity', 'expression', 'value', 'constants', 'note']


def _flatten(records: Records) -> List[CostRecord]:
    if isinstance(records, CostReport):
        return list(records.records)
    flat: List[CostRecord] = []
    for item in records:
        flat.extend(item.records if isinstance(item, CostReport) else [item])
    return flat


def cost_table(records: Records) -> pd.DataFrame:
    """One row per (scenario, method, quantity)"""
    rows = [record.to_row() for record in _flatten(records)]
    return pd.DataFrame(rows, columns=COLUMNS)


def write_cost_csv(records: Records, path: Union[str, Path]) -> Path:
    """Write the cost table as CSV, creating parent directories"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = cost_table(records)
    table.to_csv(path, index=False)
    cost_logger.info(f"Wrote {len(table)} cost rows to {path}")
    return path
