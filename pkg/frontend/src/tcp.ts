/** Node-side transport: a raw TCP connection to a serve session.
 *
 * Used by the test harness and any terminal tooling; browsers use the
 * WebSocket transport instead (same line protocol through a bridge).
 */

import net from "node:net";

import { LineSplitter } from "./transport.js";
import type { Transport } from "./transport.js";

export class TcpTransport implements Transport {
  private lineCb: ((line: string) => void) | null = null;
  private closeCb: ((err?: Error) => void) | null = null;
  private readonly splitter = new LineSplitter();

  private constructor(private readonly socket: net.Socket) {
    socket.setEncoding("utf8");
    socket.on("data", (chunk: string) => {
      for (const line of this.splitter.push(chunk)) {
        this.lineCb?.(line);
      }
    });
    socket.on("error", (err) => this.closeCb?.(err));
    socket.on("close", () => this.closeCb?.());
  }

  static connect(host: string, port: number, timeoutMs = 5000): Promise<TcpTransport> {
    return new Promise((resolve, reject) => {
      const socket = net.createConnection({ host, port });
      const timer = setTimeout(() => {
        socket.destroy();
        reject(new Error(`connect timeout after ${timeoutMs} ms (${host}:${port})`));
      }, timeoutMs);
      socket.once("connect", () => {
        clearTimeout(timer);
        socket.setNoDelay(true);
        resolve(new TcpTransport(socket));
      });
      socket.once("error", (err) => {
        clearTimeout(timer);
        reject(err);
      });
    });
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: (err?: Error) => void): void {
    this.closeCb = cb;
  }

  send(line: string): void {
    this.socket.write(line);
  }

  close(): void {
    this.socket.destroy();
  }
}
