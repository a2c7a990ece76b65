import { describe, expect, it } from "vitest";

import {
  describeRunLine,
  describeTimes,
  prettyFormula,
  verdictBanner,
} from "../src/format.js";

describe("prettyFormula", () => {
  it("re-spells connectives with conventional glyphs", () => {
    expect(prettyFormula("0 = 0 cand 0 = 1")).toBe("0 = 0 ⊓ 0 = 1");
    expect(prettyFormula("p v ~q")).toBe("p ∨ ¬q");
    expect(prettyFormula("|s| <= bb & s != 0")).toBe("|s| ≤ bb ∧ s ≠ 0");
  });

  it("re-spells quantifier prefixes", () => {
    expect(prettyFormula("call x.(cex y.(y = x))")).toBe("⊓x.(⊔y.(y = x))");
    expect(prettyFormula("all x.(ex y.(y = x))")).toBe("∀x.(∃y.(y = x))");
  });

  it("leaves constants and variables untouched", () => {
    expect(prettyFormula("10 = 11")).toBe("10 = 11");
  });
});

describe("run and time rendering", () => {
  it("attributes transcript lines to their player", () => {
    expect(describeRunLine("3 T 0.1")).toBe("t=3  machine → 0.1");
    expect(describeRunLine("5 B 10")).toBe("t=5  you → 10");
  });

  it("renders the two clocks", () => {
    expect(describeTimes({ T: 4, B: 0 })).toBe("machine time 4 · your time 0");
  });

  it("renders verdict banners", () => {
    expect(verdictBanner(undefined)).toBe("");
    expect(verdictBanner("TOP")).toBe("machine wins (⊤)");
    expect(verdictBanner("BOT")).toBe("environment wins (⊥)");
  });
});
