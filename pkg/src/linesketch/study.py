"""Stimulus sequencing and session state for sketching studies.

Nine datasets cross five noise levels into 45 stimuli. Each participant sees
every dataset once, in a fixed order, at one level; within every block of
five participants the levels rotate over datasets under a seeded shuffle, so
each block covers all 45 (dataset, level) pairs exactly once.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .core import StrokeRecord, TimeSeries
from .errors import ConfigurationError, DataError, InvalidStrokeError, ParameterError, SequencingError
from .noise import NoiseLevel, inject_gaussian_noise

STANDARD_DATASET_COUNT = 9
BLOCK_SIZE = len(NoiseLevel)

_LEVELS = list(NoiseLevel)


@dataclass(frozen=True)
class StimulusAssignment:
    dataset: str
    level: NoiseLevel

    def to_json(self) -> dict:
        return {"dataset": self.dataset, "level": self.level.value}

    @classmethod
    def from_json(cls, obj: dict) -> "StimulusAssignment":
        return cls(dataset=str(obj["dataset"]), level=NoiseLevel(obj["level"]))


@dataclass(frozen=True)
class StimulusPlan:
    participant: int
    assignments: tuple[StimulusAssignment, ...]

    def __len__(self) -> int:
        return len(self.assignments)

    def to_json(self) -> list[dict]:
        return [a.to_json() for a in self.assignments]


def build_stimulus_plan(
    datasets,
    participant: int,
    seed: int,
    *,
    allow_custom_counts: bool = False,
) -> StimulusPlan:
    """Latin-rectangle level assignment for one participant.

    Deterministic per (seed, participant): the participant's block draws a
    seeded level ordering plus phase, and the levels rotate across the fixed
    dataset order, one rotation step per dataset, one per block row.
    """
    datasets = list(datasets)
    if len(set(datasets)) != len(datasets):
        raise ConfigurationError("dataset ids must be unique")
    if not allow_custom_counts and len(datasets) != STANDARD_DATASET_COUNT:
        raise ConfigurationError(
            f"a study uses exactly {STANDARD_DATASET_COUNT} datasets, got {len(datasets)} "
            "(pass allow_custom_counts=True to override)"
        )
    if not datasets:
        raise ConfigurationError("at least one dataset is required")
    if participant < 0:
        raise ParameterError("participant index must be nonnegative")
    block, row = divmod(participant, BLOCK_SIZE)
    rng = np.random.default_rng([int(seed), block])
    order = rng.permutation(BLOCK_SIZE)
    phase = int(rng.integers(BLOCK_SIZE))
    assignments = tuple(
        StimulusAssignment(dataset, _LEVELS[order[(row + phase + d) % BLOCK_SIZE]])
        for d, dataset in enumerate(datasets)
    )
    return StimulusPlan(participant=participant, assignments=assignments)


def make_stimulus(series: TimeSeries, level: NoiseLevel, seed: int, dataset_index: int) -> TimeSeries:
    """The reproducible noisy rendering source for one (dataset, level)."""
    return inject_gaussian_noise(series, level, seed=[int(seed), dataset_index, level.index])


@dataclass(frozen=True)
class Session:
    """One participant's pass through their stimulus plan.

    Accepted strokes fill strictly in plan order; at most one per stimulus.
    """

    id: str
    participant: int
    plan: StimulusPlan
    accepted: tuple[StrokeRecord, ...] = ()

    @property
    def current_index(self) -> int:
        return len(self.accepted)

    @property
    def complete(self) -> bool:
        return len(self.accepted) == len(self.plan)


def record_sketch(session: Session, stimulus_index: int, stroke: StrokeRecord | None, action: str) -> Session:
    """Apply one accept/reset event and return the updated session.

    Resets discard the stroke and keep the stimulus pending (unlimited
    resets); accepts persist it and advance. Events for any stimulus other
    than the current pending one are protocol violations.
    """
    if action not in ("accept", "reset"):
        raise ParameterError(f"unknown action {action!r}")
    if session.complete:
        raise SequencingError("session is already complete")
    if stimulus_index != session.current_index:
        raise SequencingError(
            f"stimulus {stimulus_index} is not the pending one (expected {session.current_index})"
        )
    if action == "reset":
        return session
    if stroke is None:
        raise InvalidStrokeError("accept requires a stroke")
    return replace(session, accepted=session.accepted + (stroke,))


class SessionStore:
    """Append-only JSON-lines persistence, one file per session.

    Every accept/reset event is a line, so sessions are crash-recoverable by
    replay. Mutations are serialized per session id.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def _lock(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.jsonl"

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.jsonl"))

    def create(self, plan: StimulusPlan, session_id: str | None = None) -> Session:
        session_id = session_id or uuid.uuid4().hex[:12]
        path = self._path(session_id)
        if path.exists():
            raise ConfigurationError(f"session {session_id} already exists")
        session = Session(id=session_id, participant=plan.participant, plan=plan)
        self._append(
            session_id,
            {
                "event": "created",
                "session": session_id,
                "participant": plan.participant,
                "plan": plan.to_json(),
                "ts": time.time(),
            },
        )
        return session

    def record(self, session: Session, stimulus_index: int, stroke: StrokeRecord | None, action: str) -> Session:
        with self._lock(session.id):
            updated = record_sketch(session, stimulus_index, stroke, action)
            self._append(
                session.id,
                {
                    "event": "sketch",
                    "session": session.id,
                    "stimulus": stimulus_index,
                    "action": action,
                    "stroke": None if stroke is None else stroke.to_json(),
                    "ts": time.time(),
                },
            )
        return updated

    def _append(self, session_id: str, event: dict) -> None:
        with open(self._path(session_id), "a") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def load(self, session_id: str) -> Session:
        path = self._path(session_id)
        if not path.exists():
            raise DataError(f"no such session: {session_id}")
        session: Session | None = None
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                if event["event"] == "created":
                    plan = StimulusPlan(
                        participant=int(event["participant"]),
                        assignments=tuple(StimulusAssignment.from_json(a) for a in event["plan"]),
                    )
                    session = Session(id=session_id, participant=plan.participant, plan=plan)
                elif event["event"] == "sketch":
                    if session is None:
                        raise DataError(f"{session_id}: sketch event before creation")
                    stroke = None if event["stroke"] is None else StrokeRecord.from_json(event["stroke"])
                    session = record_sketch(session, int(event["stimulus"]), stroke, event["action"])
                else:
                    raise DataError(f"{session_id}: unknown event {event['event']!r}")
        if session is None:
            raise DataError(f"{session_id}: no creation event found")
        return session
