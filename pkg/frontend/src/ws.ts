/** Browser transport: the same line protocol over a WebSocket bridge.
 *
 * The simulation service speaks raw TCP; a deployment places a plain
 * TCP-to-WebSocket relay in front of it for browsers. Messages may
 * carry partial or multiple lines, so the splitter does the framing.
 */

import { LineSplitter } from "./transport.js";
import type { Transport } from "./transport.js";

export class WebSocketTransport implements Transport {
  private lineCb: ((line: string) => void) | null = null;
  private closeCb: ((err?: Error) => void) | null = null;
  private readonly splitter = new LineSplitter();

  private constructor(private readonly socket: WebSocket) {
    socket.onmessage = (event) => {
      for (const line of this.splitter.push(String(event.data))) {
        this.lineCb?.(line);
      }
    };
    socket.onerror = () => this.closeCb?.(new Error("websocket error"));
    socket.onclose = () => this.closeCb?.();
  }

  static connect(url: string): Promise<WebSocketTransport> {
    return new Promise((resolve, reject) => {
      const socket = new WebSocket(url);
      socket.onopen = () => resolve(new WebSocketTransport(socket));
      socket.onerror = () => reject(new Error(`cannot open ${url}`));
    });
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: (err?: Error) => void): void {
    this.closeCb = cb;
  }

  send(line: string): void {
    this.socket.send(line);
  }

  close(): void {
    this.socket.close();
  }
}
