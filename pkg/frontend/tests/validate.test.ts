import fs from "node:fs";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseAwarenessOutput, parseMarkedOutput } from "../src/template.js";
import { validateDataset, validateRows } from "../src/validate.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const testdata = path.join(here, "..", "testdata");

const GOOD_SFT = {
  input: "Question?",
  output: "<think>\n<Arabic_start>\n\nتفكير\n\n<Arabic_end>\n</think>\n\nAnswer.",
  meta: { thinking_language: "Arabic" },
};

describe("template parsing", () => {
  it("accepts a marked output", () => {
    const parsed = parseMarkedOutput(GOOD_SFT.output);
    expect(parsed.wellFormed).toBe(true);
    expect(parsed.markerLanguage).toBe("Arabic");
    expect(parsed.trace).toBe("تفكير");
    expect(parsed.answer).toBe("Answer.");
  });

  it("rejects unknown markers and missing end markers", () => {
    expect(parseMarkedOutput("<think>\n<Klingon_start>\n\nx\n\n<Klingon_end>\n</think>\n\ny").wellFormed).toBe(false);
    expect(parseMarkedOutput("<think>\n<Arabic_start>\n\nx\n</think>\n\ny").wellFormed).toBe(false);
  });

  it("accepts awareness outputs for every spelled language", () => {
    expect(parseAwarenessOutput("<think>\n\n</think>\n\nArabic").wellFormed).toBe(true);
    expect(parseAwarenessOutput("<think>\n\n</think>\n\nScottish Gaelic").wellFormed).toBe(true);
    expect(parseAwarenessOutput("<think>\n\n</think>\n\nKlingon").wellFormed).toBe(false);
    expect(parseAwarenessOutput("<think>\nnot empty\n</think>\n\nArabic").wellFormed).toBe(false);
  });
});

describe("validateDataset on pipeline outputs", () => {
  it.each([
    ["step1_sft.jsonl", "sft"],
    ["step2_sft.jsonl", "sft"],
    ["step2_awareness.jsonl", "awareness"],
    ["step2_dpo.jsonl", "dpo"],
  ] as const)("%s validates with zero violations", (file, kind) => {
    const report = validateDataset(path.join(testdata, file), kind);
    expect(report.rows).toBeGreaterThan(0);
    expect(report.violations).toEqual([]);
  });

  it("fixture files are present and non-trivial", () => {
    const dpo = fs.readFileSync(path.join(testdata, "step2_dpo.jsonl"), "utf-8");
    expect(dpo.trim().split("\n").length).toBe(46);
  });
});

describe("crafted negative rows", () => {
  it("flags an SFT output missing its end marker", () => {
    const bad = {
      ...GOOD_SFT,
      output: "<think>\n<Arabic_start>\n\nتفكير\n</think>\n\nAnswer.",
    };
    const report = validateRows([JSON.stringify(bad)], "sft");
    expect(report.violations).toHaveLength(1);
    expect(report.violations[0]).toMatchObject({ line: 1, message: "unparsed template" });
  });

  it("flags a DPO row whose chosen equals rejected", () => {
    const bad = {
      prompt: "Q",
      chosen: GOOD_SFT.output,
      rejected: GOOD_SFT.output,
      meta: { chosen_score: "10", rejected_score: "0" },
    };
    const report = validateRows([JSON.stringify(bad)], "dpo");
    expect(report.violations.map((v) => v.message)).toContain("chosen equals rejected");
  });

  it("flags a DPO row whose scores are not strictly ordered", () => {
    const bad = {
      prompt: "Q",
      chosen: GOOD_SFT.output,
      rejected: "<think>\n<French_start>\n\npensée\n\n<French_end>\n</think>\n\nRéponse.",
      meta: { chosen_score: "5", rejected_score: "5" },
    };
    const report = validateRows([JSON.stringify(bad)], "dpo");
    expect(report.violations.map((v) => v.message)).toContain(
      "chosen score not strictly above rejected score",
    );
  });

  it("reports JSON and structural problems with line numbers", () => {
    const rows = [
      JSON.stringify(GOOD_SFT),
      "{not json",
      JSON.stringify({ input: "x" }),
    ];
    const report = validateRows(rows, "sft");
    expect(report.rows).toBe(3);
    expect(report.violations.map((v) => v.line)).toEqual([2, 3]);
  });
});
