/**
 * Pure display helpers. These only re-spell server-provided text with
 * nicer glyphs; they never inspect or derive game state.
 */

/** keyword spellings -> conventional operator glyphs, longest first */
const OPERATORS: Array<[RegExp, string]> = [
  [/\bcall (\w+)\.\s*/g, "⊓$1."],
  [/\bcex (\w+)\.\s*/g, "⊔$1."],
  [/\ball (\w+)\.\s*/g, "∀$1."],
  [/\bex (\w+)\.\s*/g, "∃$1."],
  [/ cand /g, " ⊓ "],
  [/ cor /g, " ⊔ "],
  [/ & /g, " ∧ "],
  [/ v /g, " ∨ "],
  [/!=/g, "≠"],
  [/<=/g, "≤"],
  [/~/g, "¬"],
];

export function prettyFormula(text: string): string {
  let out = text;
  for (const [pattern, glyph] of OPERATORS) {
    out = out.replace(pattern, glyph);
  }
  return out;
}

/** One transcript line is `<time> <T|B> <move>`. */
export function describeRunLine(line: string): string {
  const [time, label, move] = line.split(" ");
  const who = label === "T" ? "machine" : "you";
  return `t=${time}  ${who} → ${move}`;
}

export function describeTimes(times: { T: number; B: number }): string {
  return `machine time ${times.T} · your time ${times.B}`;
}

export function verdictBanner(verdict: string | undefined): string {
  if (verdict === undefined) return "";
  if (verdict === "TOP") return "machine wins (⊤)";
  if (verdict === "BOT") return "environment wins (⊥)";
  return "undetermined";
}
