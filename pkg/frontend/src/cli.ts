/**
 * trainer-adapter CLI.
 *
 * Usage:
 *   trainer-adapter validate <file.jsonl> --kind sft|awareness|dpo
 *   trainer-adapter emit-config <step1|step2-math|step2-culture|dpo>
 *     [--out <path>] [--launch <command>]
 *
 * The adapter never starts training on its own; --launch shells out to a
 * user-supplied command with the written config path as its argument.
 */

import { spawnSync } from "node:child_process";
import fs from "node:fs";
import path from "node:path";

import { emitTrainConfig, renderConfigFile, UnknownScenario } from "./config.js";
import { validateDataset, type DatasetKind } from "./validate.js";

function flagValue(argv: string[], name: string): string | undefined {
  const at = argv.indexOf(`--${name}`);
  return at === -1 ? undefined : argv[at + 1];
}

function usage(): number {
  console.error("usage: trainer-adapter validate <file.jsonl> --kind sft|awareness|dpo");
  console.error("       trainer-adapter emit-config <scenario> [--out <path>] [--launch <command>]");
  return 64;
}

function runValidate(argv: string[]): number {
  const file = argv[0];
  const kind = flagValue(argv, "kind");
  if (!file || !kind || !["sft", "awareness", "dpo"].includes(kind)) {
    return usage();
  }
  const report = validateDataset(file, kind as DatasetKind);
  console.log(`${report.path}: ${report.rows} rows, ${report.violations.length} violations`);
  for (const violation of report.violations) {
    console.log(`  line ${violation.line}: ${violation.message}`);
  }
  return report.violations.length === 0 ? 0 : 1;
}

function runEmitConfig(argv: string[]): number {
  const scenario = argv[0];
  if (!scenario) {
    return usage();
  }
  let rendered: string;
  try {
    rendered = renderConfigFile(emitTrainConfig(scenario));
  } catch (err) {
    if (err instanceof UnknownScenario) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
  const out = flagValue(argv, "out") ?? path.join(process.cwd(), `${scenario}.train.cfg`);
  fs.writeFileSync(out, rendered, "utf-8");
  console.log(`wrote ${out}`);

  const launch = flagValue(argv, "launch");
  if (launch) {
    const result = spawnSync(launch, [out], { stdio: "inherit", shell: false });
    return result.status ?? 1;
  }
  return 0;
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (command === "validate") {
    return runValidate(rest);
  }
  if (command === "emit-config") {
    return runEmitConfig(rest);
  }
  return usage();
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("cli.ts")) {
  process.exit(main(process.argv.slice(2)));
}
