import init, { filter_curves, invert, lcurve } from "./pkg/laminate_browser.js";

const COLORS = { trm: "#1f77b4", tsvd: "#7f7f7f", li: "#2ca02c", mtrm: "#d62728", extra: "#ff7f0e" };
const $ = (id) => document.getElementById(id);

// Minimal line plot. series: [{x, y, color, dash?}], optional marker {x, y}.
function plot(canvas, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { l: 56, r: 12, t: 22, b: 34 };
  const tx = opts.logx ? Math.log10 : (v) => v;
  const ty = opts.logy ? Math.log10 : (v) => v;
  const pts = series.map((s) => s.x.map((x, i) => [tx(x), ty(s.y[i])]).filter(([a, b]) => isFinite(a) && isFinite(b)));
  const all = pts.flat();
  let [x0, x1] = [Math.min(...all.map((p) => p[0])), Math.max(...all.map((p) => p[0]))];
  let [y0, y1] = [Math.min(...all.map((p) => p[1])), Math.max(...all.map((p) => p[1]))];
  if (opts.ymin !== undefined) y0 = opts.ymin;
  if (opts.ymax !== undefined) y1 = opts.ymax;
  if (y1 === y0) { y0 -= 1; y1 += 1; }
  const sx = (v) => pad.l + ((v - x0) / (x1 - x0)) * (w - pad.l - pad.r);
  const sy = (v) => h - pad.b - ((v - y0) / (y1 - y0)) * (h - pad.t - pad.b);

  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad.l, pad.t, w - pad.l - pad.r, h - pad.t - pad.b);
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  for (let k = 0; k <= 4; k++) {
    const xv = x0 + ((x1 - x0) * k) / 4;
    const yv = y0 + ((y1 - y0) * k) / 4;
    ctx.fillText((opts.logx ? "1e" : "") + xv.toPrecision(3), sx(xv) - 14, h - pad.b + 14);
    ctx.fillText((opts.logy ? "1e" : "") + yv.toPrecision(3), 2, sy(yv) + 4);
  }
  ctx.fillText(opts.title || "", pad.l, 14);

  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash ? [5, 4] : []);
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    pts[k].forEach(([a, b], i) => (i ? ctx.lineTo(sx(a), sy(b)) : ctx.moveTo(sx(a), sy(b))));
    ctx.stroke();
  });
  ctx.setLineDash([]);
  if (opts.marker) {
    ctx.fillStyle = "#000";
    ctx.beginPath();
    ctx.arc(sx(tx(opts.marker.x)), sy(ty(opts.marker.y)), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function drawFilters() {
  const alpha = 10 ** Number($("f-alpha").value);
  $("f-alpha-v").textContent = alpha.toExponential(2);
  try {
    const data = JSON.parse(filter_curves(alpha, Number($("f-sigma").value), Number($("f-r").value), 300));
    const series = Object.entries(data.curves).map(([name, q]) => ({ x: data.mu, y: q, color: COLORS[name] }));
    plot($("filters"), series, { logx: true, ymin: 0, ymax: 1.05, title: "q(alpha, mu) against mu" });
    $("f-key").innerHTML = Object.keys(data.curves).map((n) => `<span style="color:${COLORS[n]}">${n}</span>`).join("");
  } catch (e) {
    $("f-key").innerHTML = `<span class="error">${e}</span>`;
  }
}

function runInversion() {
  const args = [$("scenario").value, $("method").value, 2, 1, Number($("delta").value), Number($("seed").value)];
  const stats = $("stats");
  try {
    const inv = JSON.parse(invert(...args));
    const profile = [{ x: inv.x, y: inv.profile, color: COLORS.mtrm }];
    if (inv.truth) profile.push({ x: inv.x, y: inv.truth, color: "#000", dash: true });
    plot($("profile"), profile, { title: "recovered profile (dashed: exact)" });
    plot($("flux"), [
      { x: inv.t, y: inv.desired, color: "#000", dash: true },
      { x: inv.t, y: inv.achieved, color: COLORS.trm },
    ], { title: "target (dashed) and achieved response" });
    const lc = JSON.parse(lcurve(...args));
    const corner = lc.corner === null ? undefined : { x: lc.residual[lc.corner], y: lc.solution[lc.corner] };
    plot($("lcurve"), [{ x: lc.residual, y: lc.solution, color: COLORS.li }],
      { logx: true, logy: true, marker: corner, title: "L-curve: solution norm against residual norm" });
    const err = inv.solution_error === null ? "" : `  rel. error ${inv.solution_error.toExponential(3)}`;
    const neg = inv.negative_nodes ? `  negative nodes ${inv.negative_nodes}` : "";
    stats.className = "stats";
    stats.textContent = `alpha ${inv.alpha.toExponential(3)} (${inv.selection})  msd ${inv.msd.toExponential(3)}${err}${neg}`;
  } catch (e) {
    stats.className = "stats error";
    stats.textContent = String(e);
  }
}

await init();
["f-alpha", "f-sigma", "f-r"].forEach((id) => $(id).addEventListener("input", drawFilters));
$("run").addEventListener("click", runInversion);
$("scenario").addEventListener("change", () => {
  $("delta").value = $("scenario").value.startsWith("ex") ? "0.001" : "0";
  runInversion();
});
drawFilters();
runInversion();
