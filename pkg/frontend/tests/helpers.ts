import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import type { LayoutDoc } from "../src/types.js";

// cwd-relative so it works in both the node and jsdom test environments
export function loadFixtureLayout(): LayoutDoc {
  const path = resolve(process.cwd(), "tests/fixtures/layout_copy_edit.json");
  return JSON.parse(readFileSync(path, "utf-8")) as LayoutDoc;
}
