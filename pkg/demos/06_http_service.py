"""Drive the study HTTP service end to end over real sockets.

Stands up the service on an ephemeral port against a temporary dataset
directory, then walks a session the way a capture client would: create,
fetch stimulus, submit a traced stroke per chart, and pull the reports.
"""

import json
import tempfile
import threading
import urllib.request
from pathlib import Path

import numpy as np

from linesketch import CanvasSpec, TimeSeries, rescale_to_canvas, save_series_csv
from linesketch.service import ServiceConfig, make_server

root = Path(tempfile.mkdtemp(prefix="linesketch_svc_"))
xs = np.arange(400.0)
u = xs / 400.0
rng = np.random.default_rng(0)
shapes = [
    60.0 * u,
    -50.0 * u + 30.0,
    35.0 * np.sin(2 * np.pi * 5 * u),
    30.0 * np.sin(2 * np.pi * 3 * u) + 25.0 * u,
    np.cumsum(rng.normal(0, 1.0, 400)),
    70.0 * u**2,
    45.0 * np.cos(2 * np.pi * 4 * u),
    np.abs(np.sin(2 * np.pi * 2 * u)) * 40.0,
    np.cumsum(rng.normal(0.1, 0.8, 400)),
]
for i, ys in enumerate(shapes):
    save_series_csv(TimeSeries(xs, ys + 100.0), root / f"ds{i}.csv")

server = make_server(ServiceConfig(data_dir=root, seed=9, n_target=512), port=0)
port = server.server_address[1]
threading.Thread(target=server.serve_forever, daemon=True).start()
print(f"service on 127.0.0.1:{port}, data in {root}")


def call(method, path, body=None):
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(
        f"http://127.0.0.1:{port}{path}", data=data, method=method,
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


session = call("POST", "/api/sessions", {})
print(f"session {session['id']} for participant {session['participant']}")

canvas = CanvasSpec()
while True:
    stimulus = call("GET", f"/api/sessions/{session['id']}/stimulus")
    if stimulus["complete"]:
        break
    # Trace the served series as the sketch (screen y points down).
    series = stimulus["series"]
    step = max(1, len(series["xs"]) // 70)
    points = [
        [series["xs"][i], canvas.height - series["ys"][i], float(i)]
        for i in range(0, len(series["xs"]), step)
    ]
    stroke = {"session": session["id"], "stimulus": stimulus["dataset"],
              "canvas": {"width": canvas.width, "height": canvas.height}, "points": points}
    result = call("POST", f"/api/sessions/{session['id']}/sketch",
                  {"stimulus": stimulus["index"], "action": "accept", "stroke": stroke})
    print(f"  {stimulus['dataset']:5s} at level {stimulus['level']:6s} -> accepted, "
          f"{'complete' if result['complete'] else 'next ' + str(result['next_index'])}")

report = call("GET", f"/api/sessions/{session['id']}/report")
clusters = [r["cluster"] for r in report["reports"]]
print(f"reports: {len(report['reports'])}, clusters: {', '.join(sorted(set(clusters)))}")
server.shutdown()
server.server_close()
