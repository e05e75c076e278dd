// Generated by `wasm-bindgen --target web --out-dir www/pkg`.
import init, { content, dm_check, mu } from "./pkg/dmkit_web.js";

const $ = (id) => document.getElementById(id);
const ring = () => [$("vars").value, $("field").value];

function show(id, json) {
  const v = JSON.parse(json);
  $(id).textContent = JSON.stringify(v, null, 2);
  return v;
}

await init();

$("c-run").onclick = () => show("c-out", content($("c-series").value, ...ring()));

$("d-run").onclick = () => {
  const k = Number($("d-k").value) || 0;
  const dmax = Number($("d-dmax").value) || 0;
  const v = show("d-out", dm_check($("d-f").value, $("d-g").value, k, dmax, ...ring()));
  const p = $("d-verdict");
  p.className = v.verdict || "";
  p.textContent = v.error ? "" : `${v.verdict} at exponent ${v.exponent}` +
    (v.d_cert != null ? `, certified at depth ${v.d_cert}` : "");
};

$("m-run").onclick = () => show("m-out", mu($("m-gens").value, $("m-point").value, ...ring()));
