"""Build stimulus plans and walk a session through accept/reset events.

Shows the Latin-rectangle coverage guarantee (every block of five
participants sees all 45 dataset-level pairs) and the append-only session
log that makes sessions replayable.
"""

import tempfile
from pathlib import Path

import numpy as np

from linesketch import (
    CanvasSpec,
    SessionStore,
    StrokeRecord,
    build_stimulus_plan,
)

datasets = ["apple", "astro", "chicago", "climate", "doge", "eeg", "flights", "tourists", "unemploy"]

print("levels per participant (block 0, seed 42):")
seen = set()
for participant in range(5):
    plan = build_stimulus_plan(datasets, participant, seed=42)
    row = " ".join(f"{a.level.value:6s}" for a in plan.assignments)
    print(f"  p{participant}: {row}")
    seen.update((a.dataset, a.level) for a in plan.assignments)
print(f"block coverage: {len(seen)} of 45 (dataset, level) pairs\n")

store_dir = Path(tempfile.mkdtemp(prefix="linesketch_demo_"))
store = SessionStore(store_dir)
session = store.create(build_stimulus_plan(datasets, participant=0, seed=42))


def fake_stroke(wobble: float) -> StrokeRecord:
    xs = np.linspace(5.0, 940.0, 60)
    ys = 180.0 + 60.0 * np.sin(xs / 90.0 + wobble)
    ts = np.arange(60.0) * 12.0
    return StrokeRecord(points=np.column_stack([xs, ys, ts]), canvas=CanvasSpec())


# The participant draws, resets twice, then accepts; later stimuli accepted
# on the first try.
session = store.record(session, 0, fake_stroke(0.1), "reset")
session = store.record(session, 0, fake_stroke(0.5), "reset")
session = store.record(session, 0, fake_stroke(0.9), "accept")
for index in range(1, len(datasets)):
    session = store.record(session, index, fake_stroke(float(index)), "accept")

print(f"session {session.id}: complete={session.complete}, accepted strokes={len(session.accepted)}")

replayed = store.load(session.id)
print(f"replay from {store_dir}: complete={replayed.complete}, "
      f"first accepted stroke matches={np.array_equal(replayed.accepted[0].points, session.accepted[0].points)}")
log_lines = (store_dir / f"{session.id}.jsonl").read_text().splitlines()
print(f"event log: {len(log_lines)} lines (1 created + 2 resets + {len(datasets)} accepts)")
