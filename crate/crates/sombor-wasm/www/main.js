import init, { sweep_collapse, complexity_profile, rg_snapshot } from "./pkg/sombor_wasm.js";

const PALETTE = ["#2458c5", "#d1342f", "#228653", "#b06c00", "#7b3fb3", "#0d7f8c"];

const $ = (id) => document.getElementById(id);
const num = (id) => {
  const v = parseFloat($(id).value);
  if (!Number.isFinite(v)) throw new Error(`bad number in '${id}'`);
  return v;
};
const int = (id) => Math.round(num(id));
const range2 = (id) => {
  const parts = $(id).value.split(",").map((s) => parseFloat(s.trim()));
  if (parts.length !== 2 || parts.some((v) => !Number.isFinite(v))) {
    throw new Error(`'${id}' must be "lo,hi"`);
  }
  return parts;
};

// ---- tiny canvas plotter: linear or log axes, legend, dashed overlays ----

function niceTicksLog(lo, hi) {
  const ticks = [];
  for (let d = Math.floor(Math.log10(lo)); d <= Math.ceil(Math.log10(hi)); d++) {
    const v = 10 ** d;
    if (v >= lo / 1.001 && v <= hi * 1.001) ticks.push(v);
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

function niceTicksLin(lo, hi) {
  const span = hi - lo || 1;
  const step = 10 ** Math.floor(Math.log10(span / 4));
  const mult = span / step > 8 ? 2 : 1;
  const ticks = [];
  const s = step * mult;
  for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-12; v += s) ticks.push(v);
  return ticks;
}

function fmtTick(v) {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0).replace("e+", "e");
  return parseFloat(v.toPrecision(4)).toString();
}

function plot(canvas, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height;
  const m = { l: 64, r: 14, t: 14, b: 40 };
  ctx.clearRect(0, 0, W, H);

  const pts = series.flatMap((s) => s.xs.map((x, i) => [x, s.ys[i]]));
  const valid = pts.filter(([x, y]) =>
    Number.isFinite(y) && (!opts.logx || x > 0) && (!opts.logy || y > 0));
  if (valid.length === 0) return;

  let xlo = Math.min(...valid.map((p) => p[0]));
  let xhi = Math.max(...valid.map((p) => p[0]));
  let ylo = Math.min(...valid.map((p) => p[1]));
  let yhi = Math.max(...valid.map((p) => p[1]));
  if (opts.ymin !== undefined) ylo = opts.ymin;
  if (opts.ymax !== undefined) yhi = Math.max(yhi, opts.ymax);
  if (!opts.logy) { const pad = 0.06 * (yhi - ylo || 1); ylo -= pad; yhi += pad; }
  else { ylo /= 1.5; yhi *= 1.5; }

  const tx = (x) => opts.logx
    ? m.l + (Math.log(x / xlo) / Math.log(xhi / xlo)) * (W - m.l - m.r)
    : m.l + ((x - xlo) / (xhi - xlo)) * (W - m.l - m.r);
  const ty = (y) => opts.logy
    ? H - m.b - (Math.log(y / ylo) / Math.log(yhi / ylo)) * (H - m.t - m.b)
    : H - m.b - ((y - ylo) / (yhi - ylo)) * (H - m.t - m.b);

  // frame and ticks
  ctx.strokeStyle = "#99a"; ctx.lineWidth = 1; ctx.fillStyle = "#556";
  ctx.font = "11px system-ui"; ctx.textAlign = "center";
  ctx.strokeRect(m.l, m.t, W - m.l - m.r, H - m.t - m.b);
  const xticks = opts.logx ? niceTicksLog(xlo, xhi) : niceTicksLin(xlo, xhi);
  for (const v of xticks) {
    const x = tx(v);
    ctx.beginPath(); ctx.moveTo(x, H - m.b); ctx.lineTo(x, H - m.b + 4); ctx.stroke();
    ctx.fillText(fmtTick(v), x, H - m.b + 16);
  }
  ctx.textAlign = "right";
  const yticks = opts.logy ? niceTicksLog(ylo, yhi) : niceTicksLin(ylo, yhi);
  for (const v of yticks) {
    const y = ty(v);
    ctx.beginPath(); ctx.moveTo(m.l - 4, y); ctx.lineTo(m.l, y); ctx.stroke();
    ctx.fillText(fmtTick(v), m.l - 7, y + 3.5);
  }
  ctx.textAlign = "center";
  if (opts.xlabel) ctx.fillText(opts.xlabel, m.l + (W - m.l - m.r) / 2, H - 6);
  if (opts.ylabel) {
    ctx.save(); ctx.translate(14, m.t + (H - m.t - m.b) / 2); ctx.rotate(-Math.PI / 2);
    ctx.fillText(opts.ylabel, 0, 0); ctx.restore();
  }

  // vertical guide lines (regime boundaries)
  for (const g of opts.guides || []) {
    if (g <= xlo || g >= xhi) continue;
    ctx.save(); ctx.strokeStyle = "#e2a33d"; ctx.setLineDash([2, 4]);
    ctx.beginPath(); ctx.moveTo(tx(g), m.t); ctx.lineTo(tx(g), H - m.b); ctx.stroke();
    ctx.restore();
  }

  // curves
  series.forEach((s, si) => {
    ctx.save();
    ctx.strokeStyle = s.color || PALETTE[si % PALETTE.length];
    ctx.lineWidth = s.dashed ? 1.5 : 2;
    if (s.dashed) ctx.setLineDash([6, 5]);
    ctx.beginPath();
    let pen = false;
    s.xs.forEach((x, i) => {
      const y = s.ys[i];
      const ok = Number.isFinite(y) && (!opts.logx || x > 0) && (!opts.logy || y > 0);
      if (!ok) { pen = false; return; }
      const px = tx(x), py = ty(y);
      if (pen) ctx.lineTo(px, py); else { ctx.moveTo(px, py); pen = true; }
    });
    ctx.stroke();
    ctx.restore();
  });

  // legend
  let ly = m.t + 14;
  ctx.textAlign = "left"; ctx.font = "12px system-ui";
  series.forEach((s, si) => {
    if (!s.label) return;
    const color = s.color || PALETTE[si % PALETTE.length];
    ctx.save();
    ctx.strokeStyle = color; ctx.lineWidth = 2;
    if (s.dashed) ctx.setLineDash([6, 5]);
    ctx.beginPath(); ctx.moveTo(m.l + 10, ly - 4); ctx.lineTo(m.l + 38, ly - 4); ctx.stroke();
    ctx.restore();
    ctx.fillStyle = "#334";
    ctx.fillText(s.label, m.l + 44, ly);
    ly += 16;
  });
}

// ---- wiring ----

async function guarded(button, readout, work) {
  button.disabled = true;
  readout.classList.remove("error");
  readout.textContent = "computing...";
  // let the browser paint before the wasm call blocks the main thread
  await new Promise((r) => setTimeout(r, 20));
  try {
    readout.textContent = await work();
  } catch (err) {
    readout.classList.add("error");
    readout.textContent = String(err);
  } finally {
    button.disabled = false;
  }
}

function runCollapse() {
  guarded($("sc-run"), $("sc-readout"), async () => {
    const [klo, khi] = range2("sc-krange");
    const out = JSON.parse(sweep_collapse(
      $("sc-model").value, $("sc-sizes").value, $("sc-index").value,
      num("sc-alpha"), num("sc-beta"), klo, khi,
      int("sc-points"), int("sc-replicas"), BigInt(int("sc-seed")),
    ));
    const saturating = Math.abs(1 + out.alpha * out.beta) < 1e-9;
    const series = out.curves.map((c) => ({ ...c }));
    series.push({ ...out.theory, dashed: true, color: "#e2a33d" });
    plot($("sc-canvas"), series, {
      logx: true, logy: !saturating,
      xlabel: "mean degree <k>", ylabel: `<${out.index_label}>/n`,
    });
    return `collapse distance over common k range: ${out.collapse_distance.toFixed(4)} `
      + `(curves coincide when small); dashed line = dense-limit prediction`;
  });
}

function runComplexity() {
  guarded($("cp-run"), $("cp-readout"), async () => {
    const [klo, khi] = range2("cp-krange");
    const withEntropy = $("cp-entropy").checked;
    const out = JSON.parse(complexity_profile(
      $("cp-model").value, int("cp-size"), $("cp-alphas").value, klo, khi,
      int("cp-points"), int("cp-replicas"), withEntropy, int("cp-spectral"),
      BigInt(int("cp-seed")),
    ));
    const series = out.curves.map((c, i) => ({
      label: `alpha = ${c.alpha}`, xs: c.xs, ys: c.ys, color: PALETTE[i % PALETTE.length],
    }));
    if (out.entropy) series.push({ ...out.entropy, label: "entropy / GOE", dashed: true, color: "#111" });
    plot($("cp-canvas"), series, {
      logx: true, ymin: 0, ymax: 1.05, guides: out.boundaries,
      xlabel: "mean degree <k>", ylabel: "scaled index",
    });
    let text = "three regimes: ~0 below k = 0.1, transition, ~1 above k = 10";
    if (out.rhos.length) {
      text += "\npearson rho vs entropy: " +
        out.rhos.map((r) => `alpha ${r.alpha}: ${r.rho.toFixed(3)}`).join(", ");
    }
    return text;
  });
}

function runSnapshot() {
  guarded($("rg-run"), $("rg-readout"), async () => {
    const out = JSON.parse(rg_snapshot(int("rg-n"), parseFloat($("rg-r").value), BigInt(int("rg-seed"))));
    const canvas = $("rg-canvas");
    const ctx = canvas.getContext("2d");
    const W = canvas.width, H = canvas.height, pad = 12;
    const px = (x) => pad + x * (W - 2 * pad);
    const py = (y) => H - pad - y * (H - 2 * pad);
    ctx.clearRect(0, 0, W, H);
    ctx.strokeStyle = "#d8dbe2";
    ctx.strokeRect(pad, pad, W - 2 * pad, H - 2 * pad);
    ctx.strokeStyle = "rgba(36, 88, 197, 0.35)";
    ctx.lineWidth = 1;
    ctx.beginPath();
    for (const [u, v] of out.edges) {
      ctx.moveTo(px(out.points[u][0]), py(out.points[u][1]));
      ctx.lineTo(px(out.points[v][0]), py(out.points[v][1]));
    }
    ctx.stroke();
    ctx.fillStyle = "#d1342f";
    for (const [x, y] of out.points) {
      ctx.beginPath(); ctx.arc(px(x), py(y), 2.5, 0, 2 * Math.PI); ctx.fill();
    }
    return `edges: ${out.edge_count}   mean degree: ${out.mean_degree.toFixed(2)} `
      + `(expected ${out.expected_mean_degree.toFixed(2)})\n`
      + `SO = ${out.sombor.toFixed(3)}   mSO = ${out.msombor.toFixed(4)}   `
      + `BSO = ${out.bsombor.toFixed(4)}`;
  });
}

init().then(() => {
  $("sc-run").addEventListener("click", runCollapse);
  $("cp-run").addEventListener("click", runComplexity);
  $("rg-run").addEventListener("click", runSnapshot);
  $("rg-r").addEventListener("input", () => {
    $("rg-rval").textContent = parseFloat($("rg-r").value).toFixed(3);
  });
  runCollapse();
  runSnapshot();
});
