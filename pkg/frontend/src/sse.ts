/**
 * Incremental server-sent-events parsing for fetch streams.
 *
 * EventSource cannot POST, so the verify stream arrives through
 * fetch + ReadableStream; this parser accepts arbitrary chunk boundaries
 * and emits complete frames in order.
 */

import type { SseEvent } from "./types.js";

export class SseParser {
  private buffer = "";

  /** Feed one decoded chunk; returns the events completed by it. */
  push(chunk: string): SseEvent[] {
    this.buffer += chunk;
    const events: SseEvent[] = [];
    let index: number;
    while ((index = this.buffer.indexOf("\n\n")) !== -1) {
      const frame = this.buffer.slice(0, index);
      this.buffer = this.buffer.slice(index + 2);
      const parsed = parseFrame(frame);
      if (parsed) events.push(parsed);
    }
    return events;
  }
}

function parseFrame(frame: string): SseEvent | null {
  let event: string | null = null;
  let data = "";
  for (const line of frame.split("\n")) {
    if (line.startsWith("event:")) {
      event = line.slice("event:".length).trim();
    } else if (line.startsWith("data:")) {
      data += line.slice("data:".length).trim();
    }
  }
  if (event === null) return null;
  let parsed: unknown = null;
  if (data !== "") {
    try {
      parsed = JSON.parse(data);
    } catch {
      parsed = data;
    }
  }
  return { event, data: parsed };
}
