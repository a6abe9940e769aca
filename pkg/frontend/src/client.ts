/**
 * WebSocket client for the bridge. Owns the connection lifecycle:
 * dispatches inbound frames by type, reconnects with backoff after a drop,
 * and reports connection status so the UI can show a banner. Each reconnect
 * is a fresh bridge session, so the caller must reset derived state
 * (layout side, trails) in `onReset`.
 */

import { ClientFrame, ServerFrame, parseServerFrame } from "./protocol";

/** Minimal WebSocket surface so tests and Node can inject their own. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "open" | "close" | "error", listener: () => void): void;
  addEventListener(type: "message", listener: (ev: { data: unknown }) => void): void;
}

export type SocketFactory = (url: string) => SocketLike;

/** Omit distributed over the frame union, so each variant keeps its shape. */
type SeqlessFrame = ClientFrame extends infer F
  ? F extends ClientFrame
    ? Omit<F, "seq">
    : never
  : never;

export interface BridgeClientOptions {
  url: string;
  socketFactory?: SocketFactory;
  /** Base reconnect delay in ms; doubles per attempt up to 8x. */
  reconnectDelayMs?: number;
  /** Disable automatic reconnection (tests). */
  reconnect?: boolean;
  onFrame?: (frame: ServerFrame) => void;
  onStatus?: (status: "connecting" | "open" | "closed") => void;
  /** Called when a new session starts (first open and every reconnect). */
  onReset?: () => void;
}

export class BridgeClient {
  private readonly opts: BridgeClientOptions;
  private readonly factory: SocketFactory;
  private socket: SocketLike | null = null;
  private seq = 0;
  private attempts = 0;
  private stopped = false;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(opts: BridgeClientOptions) {
    this.opts = opts;
    this.factory = opts.socketFactory ?? ((url) => new WebSocket(url) as unknown as SocketLike);
  }

  connect(): void {
    this.stopped = false;
    this.open();
  }

  close(): void {
    this.stopped = true;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    this.socket?.close();
    this.socket = null;
  }

  get connected(): boolean {
    return this.socket !== null;
  }

  /** Stamp the next client sequence number onto a frame and send it. */
  send(frame: SeqlessFrame): void {
    if (this.socket === null) {
      return;
    }
    this.seq += 1;
    this.socket.send(JSON.stringify({ ...frame, seq: this.seq }));
  }

  private open(): void {
    this.opts.onStatus?.("connecting");
    const socket = this.factory(this.opts.url);
    socket.addEventListener("open", () => {
      this.socket = socket;
      this.attempts = 0;
      this.seq = 0;
      this.opts.onReset?.();
      this.opts.onStatus?.("open");
    });
    socket.addEventListener("message", (ev) => {
      const frame = parseServerFrame(String(ev.data));
      if (frame !== null) {
        this.opts.onFrame?.(frame);
      }
    });
    socket.addEventListener("close", () => this.handleDrop(socket));
    socket.addEventListener("error", () => this.handleDrop(socket));
  }

  private handleDrop(socket: SocketLike): void {
    if (this.socket === socket) {
      this.socket = null;
    }
    this.opts.onStatus?.("closed");
    if (this.stopped || this.opts.reconnect === false || this.reconnectTimer !== null) {
      return;
    }
    const base = this.opts.reconnectDelayMs ?? 500;
    const delay = base * Math.min(8, 2 ** this.attempts);
    this.attempts += 1;
    this.reconnectTimer = setTimeout(() => {
      this.reconnectTimer = null;
      if (!this.stopped) {
        this.open();
      }
    }, delay);
  }
}
