/** Transport abstraction: where wire lines come from and go to.
 *
 * The session logic only sees lines, so a live TCP socket, a browser
 * WebSocket bridge, and a recorded frame log are interchangeable. The
 * replay transport is what lets tests prove the panel does no physics
 * of its own: it renders a whole session with no server in sight.
 */

export interface Transport {
  /** Register the single line consumer (newline already stripped). */
  onLine(cb: (line: string) => void): void;
  /** Register the close/error consumer. */
  onClose(cb: (err?: Error) => void): void;
  /** Send one encoded command line (trailing newline included). */
  send(line: string): void;
  close(): void;
}

/** Buffers stream chunks and emits complete newline-terminated lines. */
export class LineSplitter {
  private buffer = "";

  push(chunk: string): string[] {
    this.buffer += chunk;
    const parts = this.buffer.split("\n");
    this.buffer = parts.pop() ?? "";
    return parts.filter((p) => p.trim().length > 0);
  }
}

/** Plays back a recorded session; outbound commands are captured, not delivered. */
export class ReplayTransport implements Transport {
  readonly sent: string[] = [];
  private lineCb: ((line: string) => void) | null = null;
  private closeCb: ((err?: Error) => void) | null = null;

  constructor(private readonly lines: string[]) {}

  static fromLog(text: string): ReplayTransport {
    return new ReplayTransport(text.split("\n").filter((l) => l.trim().length > 0));
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: (err?: Error) => void): void {
    this.closeCb = cb;
  }

  send(line: string): void {
    this.sent.push(line);
  }

  /** Deliver every recorded line in order, then signal close. */
  play(): void {
    if (!this.lineCb) throw new Error("no line consumer registered");
    for (const line of this.lines) {
      this.lineCb(line);
    }
    this.closeCb?.();
  }

  /** Deliver a single extra line (for tests that interleave acks). */
  feed(line: string): void {
    if (!this.lineCb) throw new Error("no line consumer registered");
    this.lineCb(line);
  }

  close(): void {
    this.closeCb?.();
  }
}
