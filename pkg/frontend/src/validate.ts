/**
 * Line-level validation of the emitted training JSONL files against the
 * producer's schemas. Violations are reported, never thrown.
 */

import fs from "node:fs";

import { parseAwarenessOutput, parseMarkedOutput } from "./template.js";

export type DatasetKind = "sft" | "awareness" | "dpo";

export interface Violation {
  line: number;
  message: string;
}

export interface ValidationReport {
  path: string;
  kind: DatasetKind;
  rows: number;
  violations: Violation[];
}

type Row = Record<string, unknown>;

function isNonEmptyString(value: unknown): value is string {
  return typeof value === "string" && value.length > 0;
}

function checkSftRow(row: Row, line: number, violations: Violation[]): void {
  if (!isNonEmptyString(row.input)) {
    violations.push({ line, message: "missing input text" });
  }
  if (!isNonEmptyString(row.output)) {
    violations.push({ line, message: "missing output text" });
    return;
  }
  if (!parseMarkedOutput(row.output).wellFormed) {
    violations.push({ line, message: "unparsed template" });
  }
}

function checkAwarenessRow(row: Row, line: number, violations: Violation[]): void {
  if (!isNonEmptyString(row.input) || !row.input.endsWith("Thinking Language:")) {
    violations.push({ line, message: "input does not end with the language prompt" });
  }
  if (!isNonEmptyString(row.output)) {
    violations.push({ line, message: "missing output text" });
    return;
  }
  const parsed = parseAwarenessOutput(row.output);
  if (!parsed.wellFormed) {
    violations.push({ line, message: "output is not an empty-think language prediction" });
  }
}

function checkDpoRow(row: Row, line: number, violations: Violation[]): void {
  for (const field of ["prompt", "chosen", "rejected"] as const) {
    if (!isNonEmptyString(row[field])) {
      violations.push({ line, message: `missing ${field} text` });
      return;
    }
  }
  const chosen = row.chosen as string;
  const rejected = row.rejected as string;
  if (chosen === rejected) {
    violations.push({ line, message: "chosen equals rejected" });
  }
  if (!parseMarkedOutput(chosen).wellFormed) {
    violations.push({ line, message: "chosen response: unparsed template" });
  }
  if (!parseMarkedOutput(rejected).wellFormed) {
    violations.push({ line, message: "rejected response: unparsed template" });
  }
  const meta = (row.meta ?? {}) as Row;
  const chosenScore = Number(meta.chosen_score);
  const rejectedScore = Number(meta.rejected_score);
  if (Number.isFinite(chosenScore) && Number.isFinite(rejectedScore)) {
    if (!(chosenScore > rejectedScore)) {
      violations.push({ line, message: "chosen score not strictly above rejected score" });
    }
  } else {
    violations.push({ line, message: "missing chosen/rejected scores in meta" });
  }
}

const CHECKERS: Record<DatasetKind, (row: Row, line: number, v: Violation[]) => void> = {
  sft: checkSftRow,
  awareness: checkAwarenessRow,
  dpo: checkDpoRow,
};

export function validateRows(rows: string[], kind: DatasetKind, path = "<memory>"): ValidationReport {
  const violations: Violation[] = [];
  let count = 0;
  rows.forEach((text, index) => {
    const line = index + 1;
    if (!text.trim()) {
      return;
    }
    count += 1;
    let row: Row;
    try {
      row = JSON.parse(text) as Row;
    } catch (err) {
      violations.push({ line, message: `invalid JSON: ${(err as Error).message}` });
      return;
    }
    CHECKERS[kind](row, line, violations);
  });
  return { path, kind, rows: count, violations };
}

export function validateDataset(path: string, kind: DatasetKind): ValidationReport {
  const content = fs.readFileSync(path, "utf-8");
  return validateRows(content.split("\n"), kind, path);
}
