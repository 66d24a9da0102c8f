/** Browser bootstrap. The API base comes from a single global set in
 * index.html (empty string = same origin). */

import { ApiClient } from "./api.js";
import { App } from "./app.js";

declare global {
  interface Window {
    SOCLE_API_BASE?: string;
  }
}

const root = document.getElementById("app");
if (root) {
  const app = new App({
    root,
    api: new ApiClient(window.SOCLE_API_BASE ?? ""),
  });
  window.addEventListener("popstate", () => void app.start());
  void app.start();
}
