import { ApiClient } from "./api.js";
import { App } from "./app.js";

declare global {
  interface Window {
    ODFLOW_API?: string;
  }
}

function baseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? window.ODFLOW_API ?? "http://127.0.0.1:8000";
}

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app mount point");
}
const app = new App(root, new ApiClient(baseUrl()));
void app.init();
