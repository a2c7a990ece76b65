/**
 * DOM wiring for the play console. Rendering only: every fact on screen is
 * a field of the latest server response.
 */

import {
  describeRunLine,
  describeTimes,
  prettyFormula,
  verdictBanner,
} from "./format.js";
import { ApiClient, httpPoster } from "./protocol.js";
import { SessionController } from "./session.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
};

function controllerFromForm(): SessionController {
  const server = ($("server") as HTMLInputElement).value;
  return new SessionController(new ApiClient(httpPoster(server)));
}

let controller: SessionController | null = null;

function render(): void {
  const state = controller?.state;
  if (!state) return;
  $("position").textContent = prettyFormula(state.formula);
  $("initial").textContent = prettyFormula(state.initial);
  $("clock").textContent = `clock ${state.clock} · bound ${state.bound}`;
  $("times").textContent = describeTimes(state.times);
  $("machine").textContent = state.machine
    ? `machine plays: ${state.machine}`
    : "no machine strategy (two-human table)";

  const history = $("history");
  history.replaceChildren(
    ...state.run.map((line) => {
      const item = document.createElement("li");
      item.textContent = describeRunLine(line);
      return item;
    }),
  );

  const notice = $("notice");
  notice.textContent = controller?.rejection ?? "";
  notice.hidden = !controller?.rejection;

  const banner = $("verdict");
  banner.textContent = verdictBanner(state.verdict);
  banner.hidden = state.verdict === undefined;

  // the menu is the server's legal list, one button per entry, verbatim
  const menu = $("menu");
  menu.replaceChildren(
    ...(controller?.menu() ?? []).map((entry) => {
      const button = document.createElement("button");
      button.textContent = `${entry.label} ${entry.move}`;
      button.disabled = entry.label !== "B" || state.status !== "open";
      button.addEventListener("click", () => {
        void submit(entry.move);
      });
      return button;
    }),
  );
}

async function submit(move: string): Promise<void> {
  if (!controller) return;
  await controller.choose(move);
  render();
  await controller.settle();
  render();
}

async function start(): Promise<void> {
  controller = controllerFromForm();
  const corpusName = ($("corpus") as HTMLInputElement).value.trim();
  await controller.start({
    formula: ($("formula") as HTMLInputElement).value,
    bound: Number(($("bound") as HTMLInputElement).value),
    ...(corpusName ? { corpus: corpusName } : {}),
  });
  render();
  await controller.settle();
  render();
}

async function finish(): Promise<void> {
  if (!controller) return;
  await controller.finish();
  render();
}

function exportTranscript(): void {
  if (!controller) return;
  const blob = new Blob([controller.exportTranscript()], {
    type: "text/plain",
  });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "transcript.txt";
  link.click();
  URL.revokeObjectURL(link.href);
}

$("start").addEventListener("click", () => void start());
$("finish").addEventListener("click", () => void finish());
$("export").addEventListener("click", exportTranscript);
