# src/utils/progress.py

import threading
from typing import Dict, Optional
from pydantic import BaseModel
from rich.console import Console
from rich.live import Live
from rich.table import Table

console = Console(stderr=True)


class StageStatus(BaseModel):
    done: int = 0
    total: Optional[int] = None
    message: str = ""


class ProgressTracker:
    """Per-stage counters (accounts featurized, folds finished) shown as a live rich table.

    Counters are always kept; the table only renders between start() and stop(), which
    the CLI calls when stderr is a terminal.
    """
    def __init__(self):
        self.stages: Dict[str, StageStatus] = {}
        self.live = Live(Table(), console=console, refresh_per_second=4)
        self.started = False
        self._lock = threading.Lock()

    def start(self) -> None:
        if not self.started:
            self.live.start()
            self.started = True

    def stop(self) -> None:
        if self.started:
            self.live.stop()
            self.started = False

    def begin(self, stage: str, total: Optional[int] = None, message: str = "") -> None:
        with self._lock:
            self.stages[stage] = StageStatus(total=total, message=message)
            self._render()

    def advance(self, stage: str, message: Optional[str] = None) -> None:
        with self._lock:
            status = self.stages.setdefault(stage, StageStatus())
            status.done += 1
            if message is not None:
                status.message = message
            self._render()

    def update_status(self, stage: str, message: str) -> None:
        with self._lock:
            self.stages.setdefault(stage, StageStatus()).message = message
            self._render()

    def _render(self) -> None:
        if not self.started:
            return
        table = Table(show_header=False, box=None, padding=(0, 1))
        table.add_column(style="cyan")
        table.add_column(justify="right")
        table.add_column(width=80)
        for stage, status in self.stages.items():
            count = f"{status.done}/{status.total}" if status.total is not None else str(status.done)
            table.add_row(stage, count, status.message)
        self.live.update(table)


progress = ProgressTracker()
