/**
 * Single-stroke capture state machine and coordinate normalization.
 *
 * All stroke samples are kept in the logical 950x375 canvas space no matter
 * how the physical canvas is sized or what the device pixel ratio is, so
 * the analysis backend sees device-independent coordinates.
 */

export interface CanvasSpec {
  width: number;
  height: number;
}

/** Logical drawing space; matches the stimulus rendering resolution. */
export const LOGICAL_CANVAS: CanvasSpec = { width: 950, height: 375 };

export interface StrokeRecord {
  session: string;
  stimulus: string;
  canvas: CanvasSpec;
  points: [number, number, number][];
}

/** CSS-pixel size the canvas is currently displayed at. */
export interface DisplaySize {
  width: number;
  height: number;
}

export type Phase = "viewing" | "drawing" | "confirm";

/** Map a pointer position (CSS px, canvas-relative) into logical space. */
export function toLogical(x: number, y: number, display: DisplaySize, canvas: CanvasSpec = LOGICAL_CANVAS): {
  x: number;
  y: number;
} {
  const lx = (x / display.width) * canvas.width;
  const ly = (y / display.height) * canvas.height;
  return {
    x: Math.min(Math.max(lx, 0), canvas.width),
    y: Math.min(Math.max(ly, 0), canvas.height),
  };
}

/** Structural problems that would make the backend reject a stroke. */
export function validateStroke(stroke: StrokeRecord, canvas: CanvasSpec = LOGICAL_CANVAS): string[] {
  const problems: string[] = [];
  if (typeof stroke.session !== "string") problems.push("session must be a string");
  if (typeof stroke.stimulus !== "string") problems.push("stimulus must be a string");
  if (!stroke.canvas || stroke.canvas.width <= 0 || stroke.canvas.height <= 0) {
    problems.push("canvas dimensions must be positive");
  }
  if (!Array.isArray(stroke.points) || stroke.points.length < 2) {
    problems.push("a stroke needs at least 2 points");
    return problems;
  }
  let lastT = -Infinity;
  for (const point of stroke.points) {
    if (!Array.isArray(point) || point.length !== 3 || point.some((v) => !Number.isFinite(v))) {
      problems.push("every point must be a finite [x, y, t] triple");
      break;
    }
    const [x, y, t] = point;
    if (x < 0 || x > canvas.width || y < 0 || y > canvas.height) {
      problems.push(`point (${x}, ${y}) is outside the ${canvas.width}x${canvas.height} canvas`);
      break;
    }
    if (t < lastT) {
      problems.push("timestamps must be nondecreasing");
      break;
    }
    lastT = t;
  }
  return problems;
}

/**
 * One stimulus's capture lifecycle: viewing -> drawing -> confirm.
 *
 * The stroke buffer is nonempty only while drawing or confirming, and a
 * second pen-down during confirm is rejected; the participant has to accept
 * or reset first. Leaving the canvas mid-stroke counts as pen-up.
 */
export class CaptureSession {
  private currentPhase: Phase = "viewing";
  private buffer: [number, number, number][] = [];

  constructor(
    public readonly session: string,
    public readonly stimulus: string,
    public readonly canvas: CanvasSpec = LOGICAL_CANVAS,
  ) {}

  get phase(): Phase {
    return this.currentPhase;
  }

  get pointCount(): number {
    return this.buffer.length;
  }

  /** Begin a stroke. Returns false (ignored) unless in the viewing phase. */
  penDown(x: number, y: number, t: number, display: DisplaySize): boolean {
    if (this.currentPhase !== "viewing") return false;
    this.currentPhase = "drawing";
    this.addPoint(x, y, t, display);
    return true;
  }

  /** Extend the live stroke; ignored outside the drawing phase. */
  penMove(x: number, y: number, t: number, display: DisplaySize): boolean {
    if (this.currentPhase !== "drawing") return false;
    this.addPoint(x, y, t, display);
    return true;
  }

  /**
   * End the stroke and move to confirm. A degenerate press (fewer than two
   * samples) is discarded and drawing re-enabled.
   */
  penUp(): Phase {
    if (this.currentPhase !== "drawing") return this.currentPhase;
    if (this.buffer.length < 2) {
      this.buffer = [];
      this.currentPhase = "viewing";
    } else {
      this.currentPhase = "confirm";
    }
    return this.currentPhase;
  }

  /** The pointer left the canvas mid-stroke: treated exactly as pen-up. */
  pointerLeft(): Phase {
    return this.penUp();
  }

  /** Discard the stroke and re-enable drawing. Purely local. */
  reset(): void {
    this.buffer = [];
    this.currentPhase = "viewing";
  }

  /** The stroke as wire JSON; only meaningful in the confirm phase. */
  toStroke(): StrokeRecord {
    if (this.currentPhase !== "confirm") {
      throw new Error(`no confirmed stroke in phase ${this.currentPhase}`);
    }
    return {
      session: this.session,
      stimulus: this.stimulus,
      canvas: { ...this.canvas },
      points: this.buffer.map((p) => [...p] as [number, number, number]),
    };
  }

  private addPoint(x: number, y: number, t: number, display: DisplaySize): void {
    const logical = toLogical(x, y, display, this.canvas);
    const last = this.buffer[this.buffer.length - 1];
    // Clamp clock jitter so the backend's nondecreasing check always holds.
    const stamp = last ? Math.max(t, last[2]) : t;
    this.buffer.push([logical.x, logical.y, stamp]);
  }
}
