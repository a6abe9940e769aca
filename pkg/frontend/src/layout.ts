/**
 * Adaptive layout mirroring. Each interactive element of the mock app
 * declares a MirrorSpec; on a grip_event the controller docks every
 * mirroring element to the active thumb's side with a move animation,
 * while temporal, hidden, and horizontally-scrolling elements keep their
 * direction and content untouched. The rule ids in comments refer to
 * docs/guidelines.json in the parent package.
 */

import { GripEventFrame, GripStateName } from "./protocol";

export type LayoutSide = "neutral" | "left" | "right";

export interface MirrorSpec {
  /** Does this element dock to the active side at all? */
  mirrors: boolean;
  /** Mirroring elements on separate layers animate independently (rule 5). */
  layer: "content" | "floating";
  /**
   * Temporal affordances (back, forward, seek) keep their pointing
   * direction in both layouts; only their container may move (rule 8).
   */
  temporal: boolean;
}

/**
 * Per-element declarations, keyed by DOM id. Non-mirroring entries are
 * listed explicitly because *why* they stay put differs: the edge menu is
 * hidden (rule 9), the thumbnail strip scrolls horizontally (rule 10), and
 * the video list is reading content (rule 6).
 */
export const MIRROR_SPECS: Record<string, MirrorSpec> = {
  "action-cluster": { mirrors: true, layer: "floating", temporal: false },
  "back-button": { mirrors: true, layer: "content", temporal: true },
  "menu-trigger": { mirrors: true, layer: "content", temporal: false },
  "playback-controls": { mirrors: true, layer: "content", temporal: false },
  "edge-menu": { mirrors: false, layer: "content", temporal: false },
  "thumb-strip": { mirrors: false, layer: "content", temporal: false },
  "video-list": { mirrors: false, layer: "content", temporal: false },
};

/** LayoutSide is derived solely from grip_event messages, never guessed. */
export function sideFromGrip(state: GripStateName): LayoutSide {
  switch (state) {
    case "left_thumb":
      return "left";
    case "right_thumb":
      return "right";
    default:
      return "neutral";
  }
}

const SIDE_LABELS: Record<LayoutSide, string> = {
  left: "Left hand detected",
  right: "Right hand detected",
  neutral: "Handedness unknown",
};

export interface LayoutControllerOptions {
  /** Move-animation duration in ms (unanchored default: 250). */
  transitionMs?: number;
  /** Extra delay for floating-layer elements so layers read separately. */
  floatingDelayMs?: number;
  /** Clock used to record animation start times; injectable for tests. */
  now?: () => number;
}

export class LayoutController {
  readonly root: HTMLElement;
  side: LayoutSide = "neutral";
  /** Timestamp (options.now clock) when the last transition started. */
  lastChangeAt: number | null = null;
  private readonly transitionMs: number;
  private readonly floatingDelayMs: number;
  private readonly now: () => number;

  constructor(root: HTMLElement, options: LayoutControllerOptions = {}) {
    this.root = root;
    this.transitionMs = options.transitionMs ?? 250;
    this.floatingDelayMs = options.floatingDelayMs ?? 60;
    this.now = options.now ?? (() => performance.now());
    this.applySide("neutral", /* animate */ false);
  }

  /**
   * React to a grip event. Returns true when the layout actually moved;
   * an event that does not change the side is a no-op (idempotent), so a
   * repeated decision never replays the animation.
   */
  apply(event: GripEventFrame): boolean {
    const side = sideFromGrip(event.current);
    if (side === this.side) {
      return false;
    }
    this.applySide(side, true);
    return true;
  }

  /** Reconnects start a fresh session: fall back to the neutral layout. */
  reset(): void {
    this.applySide("neutral", false);
    this.lastChangeAt = null;
  }

  private applySide(side: LayoutSide, animate: boolean): void {
    this.side = side;
    this.root.dataset.side = side;
    for (const [id, spec] of Object.entries(MIRROR_SPECS)) {
      const el = this.root.querySelector<HTMLElement>(`#${id}`);
      if (el === null || !spec.mirrors) {
        continue;
      }
      el.classList.remove("dock-left", "dock-right");
      if (side !== "neutral") {
        el.classList.add(side === "left" ? "dock-left" : "dock-right");
      }
      // Rules 2 and 11: the move starts now, as a CSS translation;
      // floating-layer elements get a small offset so the layers separate.
      el.style.transitionProperty = "transform, left, right";
      el.style.transitionDuration = `${this.transitionMs}ms`;
      el.style.transitionDelay = spec.layer === "floating" ? `${this.floatingDelayMs}ms` : "0ms";
    }
    if (animate) {
      this.lastChangeAt = this.now();
      this.pulseIndicator(side);
    }
  }

  /**
   * Rules 1 and 3: announce the change with a transient indicator whose
   * pulse animation is used nowhere else in the mock app.
   */
  private pulseIndicator(side: LayoutSide): void {
    const indicator = this.root.querySelector<HTMLElement>("#grip-indicator");
    if (indicator === null) {
      return;
    }
    indicator.textContent = SIDE_LABELS[side];
    indicator.classList.remove("pulse");
    // Force a reflow so re-adding the class restarts the animation.
    void indicator.offsetWidth;
    indicator.classList.add("pulse");
  }
}

/**
 * An element's snapshot with position-only state stripped: dock classes,
 * inline transition styles, and scroll offsets are what mirroring is
 * allowed to change (rule 4); everything else must be byte-identical
 * between the left-handed and right-handed layouts.
 */
export function snapshotIgnoringPosition(el: HTMLElement): string {
  const clone = el.cloneNode(true) as HTMLElement;
  for (const node of [clone, ...Array.from(clone.querySelectorAll<HTMLElement>("*"))]) {
    node.classList.remove("dock-left", "dock-right");
    if (node.getAttribute("class") === "") {
      node.removeAttribute("class");
    }
    node.style.removeProperty("transition-property");
    node.style.removeProperty("transition-duration");
    node.style.removeProperty("transition-delay");
    if (node.getAttribute("style") === "") {
      node.removeAttribute("style");
    }
  }
  return clone.outerHTML;
}
