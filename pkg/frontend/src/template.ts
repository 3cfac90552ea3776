/**
 * Wire-format parsing of the marked think template used by the emitted
 * training files. Mirrors the producer's grammar exactly (LF whitespace):
 *
 *   marked     <think>\n<{X}_start>\n\n{trace}\n\n<{X}_end>\n</think>\n\n{answer}
 *   awareness  <think>\n\n</think>\n\n{language name}
 */

export const LANGUAGES: readonly string[] = [
  "Arabic", "Bulgarian", "Bengali", "German", "Greek", "English", "Spanish",
  "Finnish", "French", "Hebrew", "Hindi", "Hungarian", "Indonesian",
  "Italian", "Japanese", "Korean", "Malay", "Dutch", "Polish", "Portuguese",
  "Romanian", "Russian", "Swedish", "Swahili", "Thai", "Tagalog", "Turkish",
  "Ukrainian", "Urdu", "Vietnamese", "Chinese",
  "Danish", "Irish", "Scottish Gaelic", "Maori", "Norwegian",
];

const LANGUAGE_SET = new Set(LANGUAGES);

const MARKED_RE =
  /^<think>\n<([^<>\n]+)_start>\n\n([\s\S]*?)\n\n<([^<>\n]+)_end>\n<\/think>\n\n([\s\S]*)$/;
const AWARENESS_RE = /^<think>\n\n<\/think>\n\n([\s\S]*)$/;

export interface ParsedOutput {
  markerLanguage: string | null;
  trace: string;
  answer: string;
  wellFormed: boolean;
}

function count(haystack: string, needle: string): number {
  let n = 0;
  let at = haystack.indexOf(needle);
  while (at !== -1) {
    n += 1;
    at = haystack.indexOf(needle, at + needle.length);
  }
  return n;
}

/** Parse a marked training output; never throws. */
export function parseMarkedOutput(raw: string): ParsedOutput {
  const text = raw.replace(/\r\n/g, "\n");
  const singleBlock = count(text, "<think>") === 1 && count(text, "</think>") === 1;
  const m = MARKED_RE.exec(text);
  if (m && m[1] === m[3] && LANGUAGE_SET.has(m[1]) && singleBlock) {
    return { markerLanguage: m[1], trace: m[2], answer: m[4], wellFormed: true };
  }
  return { markerLanguage: null, trace: "", answer: text, wellFormed: false };
}

/** Parse a self-awareness output: empty think block, answer = language name. */
export function parseAwarenessOutput(raw: string): ParsedOutput {
  const text = raw.replace(/\r\n/g, "\n");
  const m = AWARENESS_RE.exec(text);
  if (m && LANGUAGE_SET.has(m[1]) && count(text, "<think>") === 1) {
    return { markerLanguage: null, trace: "", answer: m[1], wellFormed: true };
  }
  return { markerLanguage: null, trace: "", answer: text, wellFormed: false };
}

export function isKnownLanguage(name: string): boolean {
  return LANGUAGE_SET.has(name);
}
