// Locating and running the core extraction CLI.

import { spawnSync } from "node:child_process";

/** Command used to invoke the extractor; override with FDLP_CLI. */
export function cliCommand(): string[] {
  const override = process.env.FDLP_CLI;
  if (override && override.trim().length > 0) {
    return override.trim().split(/\s+/);
  }
  return ["fdlp"];
}

export function runCli(args: string[]): string {
  const [command, ...prefix] = cliCommand();
  const result = spawnSync(command, [...prefix, ...args], {
    encoding: "utf-8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (result.error) {
    throw new Error(`failed to run ${command}: ${result.error.message}`);
  }
  if (result.status !== 0) {
    throw new Error(
      `${command} ${args[0] ?? ""} exited with ${result.status}: ${result.stderr}`,
    );
  }
  return result.stdout;
}
