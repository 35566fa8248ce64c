// Plain-canvas front end for the feq wasm bindings. Build the module with
//   wasm-pack build --target web --out-dir www/pkg crates/feq-wasm
// then serve crates/feq-wasm/www with any static file server.

import init, { spectrum_curves, stark_curve, transmission_curve } from "./pkg/feq_wasm.js";

const COLORS = ["#2563eb", "#dc2626", "#059669", "#d97706"];

function plot(canvas, series, opts) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height;
  const m = { l: 64, r: 16, t: 14, b: 40 };
  ctx.clearRect(0, 0, W, H);

  let xmin = Infinity, xmax = -Infinity, ymin = Infinity, ymax = -Infinity;
  for (const s of series) {
    for (let i = 0; i < s.x.length; i++) {
      const y = s.y[i];
      if (!isFinite(y)) continue;
      if (opts.clipY && (y < opts.clipY[0] || y > opts.clipY[1])) continue;
      xmin = Math.min(xmin, s.x[i]); xmax = Math.max(xmax, s.x[i]);
      ymin = Math.min(ymin, y); ymax = Math.max(ymax, y);
    }
  }
  if (opts.yRange) { [ymin, ymax] = opts.yRange; }
  const padY = (ymax - ymin) * 0.06 || 1;
  ymin -= padY; ymax += padY;

  const sx = x => m.l + (x - xmin) / (xmax - xmin) * (W - m.l - m.r);
  const sy = y => H - m.b - (y - ymin) / (ymax - ymin) * (H - m.t - m.b);

  // axes + ticks
  ctx.strokeStyle = "#d1d5db"; ctx.fillStyle = "#6b7280";
  ctx.font = "11px system-ui"; ctx.lineWidth = 1;
  ctx.strokeRect(m.l, m.t, W - m.l - m.r, H - m.t - m.b);
  const fmt = v => Math.abs(v) >= 1000 ? v.toFixed(0) : Math.abs(v) >= 10 ? v.toFixed(1) : v.toPrecision(3);
  for (let i = 0; i <= 5; i++) {
    const x = xmin + (xmax - xmin) * i / 5;
    const y = ymin + (ymax - ymin) * i / 5;
    ctx.textAlign = "center";
    ctx.fillText(fmt(x), sx(x), H - m.b + 16);
    ctx.textAlign = "right";
    ctx.fillText(fmt(y), m.l - 6, sy(y) + 4);
    ctx.beginPath(); ctx.moveTo(sx(x), H - m.b); ctx.lineTo(sx(x), H - m.b + 4); ctx.stroke();
    ctx.beginPath(); ctx.moveTo(m.l - 4, sy(y)); ctx.lineTo(m.l, sy(y)); ctx.stroke();
  }
  ctx.textAlign = "center";
  ctx.fillText(opts.xlabel, m.l + (W - m.l - m.r) / 2, H - 8);
  ctx.save();
  ctx.translate(14, m.t + (H - m.t - m.b) / 2); ctx.rotate(-Math.PI / 2);
  ctx.fillText(opts.ylabel, 0, 0);
  ctx.restore();

  // curves
  for (const s of series) {
    ctx.strokeStyle = s.color; ctx.lineWidth = s.width || 1.5;
    ctx.setLineDash(s.dash || []);
    ctx.beginPath();
    let pen = false;
    for (let i = 0; i < s.x.length; i++) {
      const y = s.y[i];
      if (!isFinite(y) || y < ymin || y > ymax) { pen = false; continue; }
      const px = sx(s.x[i]), py = sy(y);
      if (pen) ctx.lineTo(px, py); else { ctx.moveTo(px, py); pen = true; }
    }
    ctx.stroke();
    ctx.setLineDash([]);
  }

  // legend
  ctx.textAlign = "left"; ctx.font = "12px system-ui";
  let ly = m.t + 16;
  for (const s of series) {
    if (!s.label) continue;
    ctx.strokeStyle = s.color; ctx.lineWidth = 2;
    ctx.beginPath(); ctx.moveTo(W - m.r - 150, ly - 4); ctx.lineTo(W - m.r - 126, ly - 4); ctx.stroke();
    ctx.fillStyle = "#374151";
    ctx.fillText(s.label, W - m.r - 120, ly);
    ly += 16;
  }
}

const $ = id => document.getElementById(id);

function drawSpectrum() {
  const material = $("sp-material").value;
  const eperp = parseFloat($("sp-eperp").value) * 1e3;
  const levels = parseInt($("sp-levels").value, 10);
  $("sp-eperp-out").textContent = `${(eperp / 1e3).toFixed(1)} kV/m`;
  $("sp-levels-out").textContent = levels;

  const p = JSON.parse(spectrum_curves(material, eperp, levels));
  const floor = material === "helium" ? -800 : -4200;
  const series = [{
    x: p.z_nm, y: p.potential_ghz, color: "#6b7280", width: 1.2, label: "V(z)/h",
  }];
  p.levels.forEach((lvl, i) => {
    series.push({ x: p.z_nm, y: lvl.display_ghz, color: COLORS[i % COLORS.length], label: `ψ${lvl.n} (E${lvl.n} offset)` });
    series.push({ x: p.z_nm, y: p.z_nm.map(() => lvl.energy_ghz), color: COLORS[i % COLORS.length], dash: [4, 4], width: 1 });
  });
  plot($("sp-canvas"), series, {
    xlabel: "z from surface (nm)", ylabel: "energy / h (GHz)", clipY: [floor, 900],
  });
  $("sp-info").textContent =
    `f12 = ${p.f12_ghz.toFixed(2)} GHz · ⟨z⟩₁ = ${p.levels[0].mean_z_nm.toFixed(2)} nm · d = ${p.dipole_nm.toFixed(1)} nm`;
}

function drawStark() {
  const material = $("st-material").value;
  const max = parseFloat($("st-max").value) * 1e3;
  $("st-max-out").textContent = `${(max / 1e3).toFixed(0)} kV/m`;
  const p = JSON.parse(stark_curve(material, 0, max, 41));
  plot($("st-canvas"), [
    { x: p.eperp_v_per_m.map(v => v / 1e3), y: p.f12_ghz, color: COLORS[0], label: "f12 (GHz)" },
  ], { xlabel: "E⊥ (kV/m)", ylabel: "f12 (GHz)" });
  const span = p.f12_ghz[p.f12_ghz.length - 1] - p.f12_ghz[0];
  $("st-info").textContent =
    `f12: ${p.f12_ghz[0].toFixed(2)} → ${p.f12_ghz[p.f12_ghz.length - 1].toFixed(2)} GHz (Δ = ${span.toFixed(2)} GHz)`;
}

let readoutTimer = null;
function drawReadout() {
  // The steady-state integration takes a moment; debounce slider storms.
  clearTimeout(readoutTimer);
  $("rd-busy").textContent = "integrating steady state…";
  readoutTimer = setTimeout(() => {
    const eps = parseFloat($("rd-eps").value);
    const t = parseFloat($("rd-t").value);
    const g1 = parseFloat($("rd-g1").value);
    const dressed = $("rd-basis").value === "dressed";
    $("rd-eps-out").textContent = `${eps.toFixed(2)} GHz`;
    $("rd-t-out").textContent = `${t.toFixed(2)} GHz`;
    $("rd-g1-out").textContent = `${g1.toFixed(1)} MHz`;

    const p = JSON.parse(transmission_curve(eps, t, dressed, g1, 100.0, 4.0, 301));
    plot($("rd-canvas"), [
      { x: p.delta0_mhz, y: p.tc_ref_abs, color: "#9ca3af", dash: [5, 4], label: "|t_c| no transition" },
      { x: p.delta0_mhz, y: p.tc_abs, color: COLORS[1], label: "|t_c| with transition" },
    ], { xlabel: "Δ₀/2π (MHz)", ylabel: "|t_c|" });
    $("rd-figs").textContent =
      `χ = ${p.chi_re_s.toExponential(3)} ${p.chi_im_s >= 0 ? "+" : "−"} ${Math.abs(p.chi_im_s).toExponential(2)}i s · ` +
      `g_c/2π = ${p.g_c_mhz.toFixed(3)} MHz · ΔC = ${p.delta_capacitance_af.toFixed(3)} aF · ` +
      `SNR(1 µs, n̄=100) = ${p.snr.toExponential(3)} · S_c = ${p.sensitivity_f_per_sqrt_hz.toExponential(3)} F/√Hz`;
    $("rd-busy").textContent = "";
  }, 150);
}

async function main() {
  await init();
  for (const id of ["sp-material", "sp-eperp", "sp-levels"]) $(id).addEventListener("input", drawSpectrum);
  for (const id of ["st-material", "st-max"]) $(id).addEventListener("input", drawStark);
  for (const id of ["rd-eps", "rd-t", "rd-g1", "rd-basis"]) $(id).addEventListener("input", drawReadout);
  drawSpectrum();
  drawStark();
  drawReadout();
}

main();
