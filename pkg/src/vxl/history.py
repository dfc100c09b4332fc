"""Append-only snapshot store: source text plus the latest run report on
every save, persisted as JSON lines."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import VxlError
from .parser import parse


class HistoryError(VxlError):
    pass


@dataclass
class Snapshot:
    index: int
    timestamp: int  # milliseconds since epoch
    source: str
    report: Optional[dict] = None  # RunReport JSON projection

    def to_json(self) -> dict:
        out = {"index": self.index, "timestamp": self.timestamp,
               "source": self.source}
        if self.report is not None:
            out["report"] = self.report
        return out


@dataclass
class SnapshotStore:
    snapshots: List[Snapshot] = field(default_factory=list)

    def __len__(self):
        return len(self.snapshots)

    def record(self, source: str, report: Optional[dict] = None,
               timestamp: Optional[int] = None) -> Snapshot:
        parse(source)  # unparseable sources are rejected upstream too
        snap = Snapshot(index=len(self.snapshots),
                        timestamp=timestamp if timestamp is not None
                        else int(time.time() * 1000),
                        source=source, report=report)
        self.snapshots.append(snap)
        return snap

    def get(self, index: int) -> Snapshot:
        if index < 0 or index >= len(self.snapshots):
            raise HistoryError(f"no snapshot with index {index}")
        return self.snapshots[index]

    def restore(self, index: int) -> str:
        return self.get(index).source

    def persist(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            for snap in self.snapshots:
                fh.write(json.dumps(snap.to_json(), ensure_ascii=False))
                fh.write("\n")


def load(path) -> SnapshotStore:
    store = SnapshotStore()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.strip() == "":
                continue
            try:
                data = json.loads(line)
                snap = Snapshot(index=int(data["index"]),
                                timestamp=int(data["timestamp"]),
                                source=data["source"],
                                report=data.get("report"))
            except (json.JSONDecodeError, KeyError, TypeError,
                    ValueError) as exc:
                raise HistoryError(
                    f"malformed snapshot at line {lineno}: {exc}") from exc
            if snap.index != len(store.snapshots):
                raise HistoryError(
                    f"malformed snapshot at line {lineno}: index "
                    f"{snap.index} is out of sequence")
            store.snapshots.append(snap)
    return store
