import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));

/** Load the real playground markup into the jsdom document body. */
export function loadAppDom(): HTMLElement {
  const html = readFileSync(join(here, "..", "static", "index.html"), "utf8");
  const body = html.match(/<body>([\s\S]*)<\/body>/);
  if (body === null) {
    throw new Error("index.html has no <body>");
  }
  document.body.innerHTML = body[1];
  const phone = document.getElementById("phone");
  if (phone === null) {
    throw new Error("index.html has no #phone");
  }
  return phone;
}

export function gripEvent(
  current: string,
  previous = "unknown",
  seq = 1,
  at = 0,
): import("../src/protocol").GripEventFrame {
  return {
    type: "grip_event",
    seq,
    previous: previous as never,
    current: current as never,
    cause: "swipe_evidence",
    at,
  };
}
