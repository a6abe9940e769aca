import { describe, expect, it, vi } from "vitest";

import { BridgeClient, SocketLike } from "../src/client";
import { ServerFrame, parseServerFrame } from "../src/protocol";

class FakeSocket implements SocketLike {
  sent: string[] = [];
  closed = false;
  private listeners = new Map<string, Array<(ev?: unknown) => void>>();

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closed = true;
  }

  addEventListener(type: string, listener: (ev?: unknown) => void): void {
    const list = this.listeners.get(type) ?? [];
    list.push(listener);
    this.listeners.set(type, list);
  }

  emit(type: string, ev?: unknown): void {
    for (const listener of this.listeners.get(type) ?? []) {
      listener(ev);
    }
  }
}

function makeClient(overrides: Partial<ConstructorParameters<typeof BridgeClient>[0]> = {}) {
  const sockets: FakeSocket[] = [];
  const frames: ServerFrame[] = [];
  const statuses: string[] = [];
  const resets: number[] = [];
  const client = new BridgeClient({
    url: "ws://test/ws",
    socketFactory: () => {
      const s = new FakeSocket();
      sockets.push(s);
      return s;
    },
    onFrame: (f) => frames.push(f),
    onStatus: (s) => statuses.push(s),
    onReset: () => resets.push(resets.length),
    reconnectDelayMs: 5,
    ...overrides,
  });
  return { client, sockets, frames, statuses, resets };
}

describe("parseServerFrame", () => {
  it("accepts the four known frame types", () => {
    const frame = parseServerFrame('{"type": "decision", "seq": 1, "label": "left", "c": -1e-3, "r2": 0.99}');
    expect(frame?.type).toBe("decision");
  });

  it("returns null for garbage and unknown types", () => {
    expect(parseServerFrame("not json")).toBeNull();
    expect(parseServerFrame('{"type": "mystery"}')).toBeNull();
    expect(parseServerFrame("42")).toBeNull();
  });
});

describe("BridgeClient", () => {
  it("stamps strictly increasing seq numbers onto outbound frames", () => {
    const { client, sockets } = makeClient();
    client.connect();
    sockets[0].emit("open");
    client.send({ type: "hint", hint: "lock", t: 1 });
    client.send({ type: "config", debug: true });
    const seqs = sockets[0].sent.map((s) => JSON.parse(s).seq);
    expect(seqs).toEqual([1, 2]);
  });

  it("dispatches parsed frames and ignores unknown ones", () => {
    const { client, sockets, frames } = makeClient();
    client.connect();
    sockets[0].emit("open");
    sockets[0].emit("message", { data: '{"type": "grip_event", "seq": 1, "previous": "unknown", "current": "right_thumb", "cause": "swipe_evidence", "at": 1}' });
    sockets[0].emit("message", { data: "garbage" });
    expect(frames).toHaveLength(1);
    expect(frames[0].type).toBe("grip_event");
  });

  it("reconnects after a drop and signals a session reset", async () => {
    vi.useFakeTimers();
    try {
      const { client, sockets, resets, statuses } = makeClient();
      client.connect();
      sockets[0].emit("open");
      expect(resets).toHaveLength(1);
      sockets[0].emit("close");
      expect(statuses.at(-1)).toBe("closed");
      await vi.advanceTimersByTimeAsync(10);
      expect(sockets).toHaveLength(2);
      sockets[1].emit("open");
      expect(resets).toHaveLength(2);
      client.close();
    } finally {
      vi.useRealTimers();
    }
  });

  it("does not reconnect once closed", async () => {
    vi.useFakeTimers();
    try {
      const { client, sockets } = makeClient();
      client.connect();
      sockets[0].emit("open");
      client.close();
      sockets[0].emit("close");
      await vi.advanceTimersByTimeAsync(100);
      expect(sockets).toHaveLength(1);
    } finally {
      vi.useRealTimers();
    }
  });

  it("drops sends while disconnected instead of throwing", () => {
    const { client } = makeClient();
    expect(() => client.send({ type: "hint", hint: "lock", t: 1 })).not.toThrow();
  });

  it("resets seq numbering per session", () => {
    const { client, sockets } = makeClient({ reconnect: false });
    client.connect();
    sockets[0].emit("open");
    client.send({ type: "hint", hint: "lock", t: 1 });
    sockets[0].emit("close");
    client.connect();
    sockets[1].emit("open");
    client.send({ type: "hint", hint: "lock", t: 2 });
    expect(JSON.parse(sockets[1].sent[0]).seq).toBe(1);
  });
});
