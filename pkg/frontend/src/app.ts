/**
 * Browser wiring: stimulus display, pen capture on a responsive canvas,
 * accept/reset flow against the study service.
 *
 * The stimulus stays visible beside the drawing canvas the whole time; the
 * canvas keeps the 2.53:1 logical aspect and records exactly one continuous
 * stroke per stimulus.
 */

import { StudyClient, StimulusPayload } from "./api.js";
import { CaptureSession, LOGICAL_CANVAS, validateStroke } from "./capture.js";

const baseUrl = new URLSearchParams(location.search).get("api") ?? "";
const client = new StudyClient(baseUrl);

const stimulusPane = document.getElementById("stimulus") as HTMLDivElement;
const statusLine = document.getElementById("status") as HTMLParagraphElement;
const progressLine = document.getElementById("progress") as HTMLParagraphElement;
const canvas = document.getElementById("sketchpad") as HTMLCanvasElement;
const acceptButton = document.getElementById("accept") as HTMLButtonElement;
const resetButton = document.getElementById("reset") as HTMLButtonElement;
const context = canvas.getContext("2d")!;

let sessionId = "";
let capture: CaptureSession | null = null;
let stimulusIndex = 0;
let posting = false;

function displaySize() {
  const rect = canvas.getBoundingClientRect();
  return { width: rect.width, height: rect.height };
}

function resizeBackingStore() {
  const rect = canvas.getBoundingClientRect();
  canvas.width = Math.round(rect.width * devicePixelRatio);
  canvas.height = Math.round(rect.height * devicePixelRatio);
  redraw();
}

function redraw() {
  context.setTransform(1, 0, 0, 1, 0, 0);
  context.clearRect(0, 0, canvas.width, canvas.height);
  if (!capture || capture.pointCount === 0) return;
  // Draw in logical space scaled to the backing store.
  const scaleX = canvas.width / LOGICAL_CANVAS.width;
  const scaleY = canvas.height / LOGICAL_CANVAS.height;
  context.setTransform(scaleX, 0, 0, scaleY, 0, 0);
  context.strokeStyle = "#bb2244";
  context.lineWidth = 2 / scaleX;
  context.lineJoin = "round";
  context.lineCap = "round";
  const stroke = capture.phase === "confirm" ? capture.toStroke().points : liveTrace;
  context.beginPath();
  stroke.forEach(([x, y], i) => (i === 0 ? context.moveTo(x, y) : context.lineTo(x, y)));
  context.stroke();
}

// Mirror of the capture buffer for live rendering while drawing.
let liveTrace: [number, number, number][] = [];

function setStatus(text: string) {
  statusLine.textContent = text;
}

function updateButtons() {
  const confirming = capture?.phase === "confirm";
  acceptButton.disabled = !confirming || posting;
  resetButton.disabled = !confirming || posting;
}

function canvasPoint(event: PointerEvent) {
  const rect = canvas.getBoundingClientRect();
  return { x: event.clientX - rect.left, y: event.clientY - rect.top };
}

canvas.addEventListener("pointerdown", (event) => {
  if (!capture) return;
  const { x, y } = canvasPoint(event);
  if (capture.penDown(x, y, event.timeStamp, displaySize())) {
    liveTrace = [[x, y, event.timeStamp]];
    canvas.setPointerCapture(event.pointerId);
    setStatus("drawing — keep the pen on the canvas");
  } else if (capture.phase === "confirm") {
    setStatus("accept or reset the current stroke first");
  }
  updateButtons();
});

canvas.addEventListener("pointermove", (event) => {
  if (!capture) return;
  const { x, y } = canvasPoint(event);
  const display = displaySize();
  if (x < 0 || y < 0 || x > display.width || y > display.height) {
    if (capture.phase === "drawing") finishStroke("the pen left the canvas");
    return;
  }
  if (capture.penMove(x, y, event.timeStamp, display)) {
    liveTrace.push([x, y, event.timeStamp]);
    redraw();
  }
});

canvas.addEventListener("pointerup", () => finishStroke());
canvas.addEventListener("pointerleave", () => {
  if (capture?.phase === "drawing") finishStroke("the pen left the canvas");
});

function finishStroke(reason?: string) {
  if (!capture || capture.phase !== "drawing") return;
  const phase = capture.penUp();
  if (phase === "confirm") {
    setStatus(`${reason ? reason + " — " : ""}accept this sketch or reset to redraw`);
  } else {
    liveTrace = [];
    setStatus("stroke too short, draw again");
  }
  redraw();
  updateButtons();
}

resetButton.addEventListener("click", () => {
  if (!capture || capture.phase !== "confirm") return;
  capture.reset();
  liveTrace = [];
  redraw();
  setStatus("cleared — draw a single stroke");
  updateButtons();
});

acceptButton.addEventListener("click", async () => {
  if (!capture || capture.phase !== "confirm" || posting) return;
  const stroke = capture.toStroke();
  const problems = validateStroke(stroke);
  if (problems.length) {
    setStatus(`cannot submit: ${problems[0]}`);
    return;
  }
  posting = true;
  updateButtons();
  try {
    const result = await client.submitSketch(sessionId, stimulusIndex, stroke, "accept");
    capture = null;
    liveTrace = [];
    redraw();
    if (result.complete) {
      stimulusPane.innerHTML = "";
      progressLine.textContent = "";
      setStatus("all sketches recorded — thank you!");
    } else {
      await showCurrentStimulus();
    }
  } catch (error) {
    // The stroke stays local; the participant can just press accept again.
    setStatus(`submission failed (${String(error)}) — press accept to retry`);
  } finally {
    posting = false;
    updateButtons();
  }
});

async function showCurrentStimulus() {
  const payload: StimulusPayload = await client.fetchStimulus(sessionId);
  if (payload.complete || payload.index === null) {
    setStatus("all sketches recorded — thank you!");
    return;
  }
  stimulusIndex = payload.index;
  stimulusPane.innerHTML = payload.svg ?? "";
  progressLine.textContent = `chart ${payload.index + 1} of ${payload.total}`;
  capture = new CaptureSession(sessionId, payload.dataset ?? String(payload.index));
  liveTrace = [];
  redraw();
  setStatus("re-draw the chart in a single stroke; lifting the pen ends it");
  updateButtons();
}

async function start() {
  try {
    const info = await client.createSession();
    sessionId = info.id;
    await showCurrentStimulus();
  } catch (error) {
    setStatus(`could not reach the study service: ${String(error)}`);
  }
}

window.addEventListener("resize", resizeBackingStore);
resizeBackingStore();
void start();
