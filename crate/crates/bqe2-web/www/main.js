import init, { listChecks, fourierRow, runCheck, decayCurves } from "./pkg/bqe2_web.js";

const $ = (id) => document.getElementById(id);
const q = () => [parseFloat($("qmod").value), $("qarg").value.trim()];
const COLOURS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function fail(el, err) {
  el.innerHTML = `<span class="fail">${err}</span>`;
}

function plotFourier() {
  const [mod] = q();
  const n = parseInt($("frow").value, 10);
  const mMax = parseInt($("fm").value, 10);
  let values;
  try {
    values = fourierRow(mod, n, mMax);
  } catch (e) {
    return fail($("fnote"), e);
  }
  const c = $("fcanvas");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  const mid = c.height / 2;
  const peak = Math.max(...values.map(Math.abs), 1e-300);
  const w = c.width / values.length;
  g.strokeStyle = "#999";
  g.beginPath(); g.moveTo(0, mid); g.lineTo(c.width, mid); g.stroke();
  values.forEach((v, k) => {
    const h = (v / peak) * (mid - 10);
    g.fillStyle = v >= 0 ? COLOURS[0] : COLOURS[1];
    g.fillRect(k * w + 1, h >= 0 ? mid - h : mid, Math.max(w - 2, 1), Math.abs(h));
  });
  const sum = values.reduce((s, v) => s + v * v, 0);
  $("fnote").textContent = `m from ${-mMax} to ${mMax}; largest |F_m| = ${peak.toExponential(3)}; sum of squares - 1 = ${(sum - 1).toExponential(2)}`;
}

function showCheck() {
  const [mod, arg] = q();
  const radius = parseInt($("radius").value, 10);
  $("cout").textContent = "running...";
  setTimeout(() => {
    let r;
    try {
      r = JSON.parse(runCheck($("check").value, mod, arg, radius));
    } catch (e) {
      return fail($("cout"), e);
    }
    const rows = r.parts.map((p) =>
      `<tr><td>${p.label}</td><td>${p.residual.toExponential(3)}</td><td>${p.tolerance.toExponential(1)}</td>` +
      `<td>${p.probes}</td><td class="${p.passed ? "pass" : "fail"}">${p.passed ? "pass" : "FAIL"}</td></tr>`).join("");
    $("cout").innerHTML =
      `<p><code>${r.formula}</code></p>` +
      (r.error ? `<p class="fail">${r.error}</p>` : "") +
      `<table><tr><th>part</th><th>residual</th><th>tolerance</th><th>probes</th><th></th></tr>${rows}</table>` +
      `<p>${r.elapsed_ms.toFixed(0)} ms</p>`;
  }, 10);
}

function plotDecay() {
  const [mod, arg] = q();
  let curves;
  try {
    curves = JSON.parse(decayCurves(mod, arg));
  } catch (e) {
    return fail($("dnote"), e);
  }
  const c = $("dcanvas");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  const pts = curves.flatMap((cv) => cv.residuals.filter((r) => r > 0));
  const lo = Math.log10(Math.min(...pts));
  const hi = Math.log10(Math.max(...pts));
  const lMax = Math.max(...curves.flatMap((cv) => cv.ls));
  const x = (l) => 40 + ((l - 1) / Math.max(lMax - 1, 1)) * (c.width - 60);
  const y = (r) => 10 + ((hi - Math.log10(r)) / Math.max(hi - lo, 1e-9)) * (c.height - 30);
  g.fillStyle = "#333";
  g.fillText(`1e${hi.toFixed(1)}`, 2, 14);
  g.fillText(`1e${lo.toFixed(1)}`, 2, c.height - 20);
  const notes = [];
  curves.forEach((cv, k) => {
    g.strokeStyle = COLOURS[k % COLOURS.length];
    g.beginPath();
    cv.ls.forEach((l, i) => {
      const r = cv.residuals[i];
      if (r > 0) (i === 0 ? g.moveTo : g.lineTo).call(g, x(l), y(r));
    });
    g.stroke();
    const ratio = cv.ratio === null ? "below floor" : cv.ratio.toFixed(4);
    notes.push(`<span style="color:${g.strokeStyle}">${cv.label}</span>: ratio ${ratio} (expected ${cv.expected.toFixed(4)})`);
  });
  $("dnote").innerHTML = notes.join("<br>");
}

await init();
for (const c of JSON.parse(listChecks())) {
  const o = document.createElement("option");
  o.value = c.id;
  o.textContent = `${c.id} ${c.name}`;
  $("check").append(o);
}
$("check").value = "C14";
$("fgo").onclick = plotFourier;
$("cgo").onclick = showCheck;
$("dgo").onclick = plotDecay;
plotFourier();
