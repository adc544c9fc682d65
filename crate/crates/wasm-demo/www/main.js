import init, { membership_curves, comr_surface, lifetime } from "./pkg/fihr_wasm_demo.js";

const COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"];
const PROTOCOLS = [["fihr", "#d62728"], ["ihr", "#1f77b4"], ["dhr", "#2ca02c"]];
const SURFACE_N = 80;
const $ = (id) => document.getElementById(id);

function legend(el, entries) {
  el.innerHTML = entries.map(([label, color]) => `<span><i style="background:${color}"></i>${label}</span>`).join("");
}

// Draws each series over a shared x axis; `ys` is a list of arrays.
function plot(canvas, xs, ys, colors, yMax, xLabel, yLabel) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { l: 50, r: 10, t: 10, b: 30 };
  ctx.clearRect(0, 0, w, h);
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const px = (x) => pad.l + ((x - x0) / (x1 - x0 || 1)) * (w - pad.l - pad.r);
  const py = (y) => h - pad.b - (y / (yMax || 1)) * (h - pad.t - pad.b);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad.l, pad.t, w - pad.l - pad.r, h - pad.t - pad.b);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText(x0.toFixed(1), pad.l, h - 10);
  ctx.fillText(x1.toFixed(1), w - pad.r - 40, h - 10);
  ctx.fillText(xLabel, w / 2 - 30, h - 10);
  ctx.fillText(yMax.toFixed(1), 5, pad.t + 10);
  ctx.fillText(yLabel, 5, h / 2);
  ys.forEach((series, k) => {
    ctx.strokeStyle = colors[k % colors.length];
    ctx.lineWidth = 2;
    ctx.beginPath();
    series.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
  });
}

function drawCurves() {
  const c = membership_curves($("scenario").value, $("variable").value, 400);
  const x = c.x, g = c.grades, labels = c.labels;
  const ys = labels.map((_, t) => g.subarray(t * x.length, (t + 1) * x.length));
  plot($("curves"), x, ys, COLORS, 1, $("variable").value, "grade");
  legend($("curves-legend"), labels.map((l, i) => [l, COLORS[i % COLORS.length]]));
  c.free();
}

let surface = null;

function drawSurface() {
  surface = comr_surface($("scenario").value, SURFACE_N);
  const max = Math.max(...surface);
  const canvas = $("surface");
  const ctx = canvas.getContext("2d");
  const cell = canvas.width / SURFACE_N;
  for (let i = 0; i < SURFACE_N; i++) {
    for (let j = 0; j < SURFACE_N; j++) {
      const v = Math.round((surface[i * SURFACE_N + j] / max) * 255);
      ctx.fillStyle = `rgb(${v}, ${Math.round(v * 0.8)}, ${255 - v})`;
      ctx.fillRect(j * cell, i * cell, cell + 1, cell + 1);
    }
  }
}

$("surface").addEventListener("mousemove", (ev) => {
  if (!surface) return;
  const rect = ev.target.getBoundingClientRect();
  const j = Math.min(SURFACE_N - 1, Math.floor(((ev.clientX - rect.left) / rect.width) * SURFACE_N));
  const i = Math.min(SURFACE_N - 1, Math.floor(((ev.clientY - rect.top) / rect.height) * SURFACE_N));
  const frac = (k) => (k / (SURFACE_N - 1)).toFixed(2);
  $("surface-readout").textContent =
    `energy ${frac(i)} of initial, distance ${frac(j)} of max: range ${surface[i * SURFACE_N + j].toFixed(3)} m`;
});

function runLifetime() {
  const args = [$("scenario").value, +$("rounds").value, +$("runs").value, +$("seed").value, +$("fault").value];
  const results = PROTOCOLS.map(([p]) => {
    const r = lifetime(args[0], p, args[1], args[2], args[3], args[4]);
    const out = { alive: r.alive, residual: r.residual, fnd: r.fnd, hna: r.hna, kb: r.throughput_kb };
    r.free();
    return out;
  });
  const xs = Array.from(results[0].alive, (_, i) => i + 1);
  const colors = PROTOCOLS.map(([, c]) => c);
  plot($("alive"), xs, results.map((r) => r.alive), colors, Math.max(...results[0].alive), "round", "alive");
  plot($("residual"), xs, results.map((r) => r.residual), colors, Math.max(...results.map((r) => r.residual[0])), "round", "residual J");
  legend($("life-legend"), PROTOCOLS.map(([p, c]) => [p.toUpperCase(), c]));
  const fmt = (v) => (v === undefined || v === null ? "n/a" : v.toFixed(1));
  $("stats").textContent = ["protocol   FND      HNA      throughput KB"]
    .concat(results.map((r, k) => `${PROTOCOLS[k][0].padEnd(10)} ${fmt(r.fnd).padEnd(8)} ${fmt(r.hna).padEnd(8)} ${r.kb.toFixed(1)}`))
    .join("\n");
}

function safely(f) {
  return () => {
    try {
      f();
    } catch (e) {
      $("stats").textContent = `error: ${e.message ?? e}`;
    }
  };
}

await init();
$("variable").addEventListener("change", safely(drawCurves));
$("scenario").addEventListener("change", safely(() => { drawCurves(); drawSurface(); }));
$("run").addEventListener("click", safely(runLifetime));
drawCurves();
drawSurface();
