import init, { zeros, predicted_curves, summary } from "./pkg/faber_web.js";

const COLORS = {
  airfoil: ["#000000", 1.5, []],
  arc_plus: ["#1f5fbf", 1.2, []],
  arc_minus: ["#1f5fbf", 1.2, []],
  cb: ["#2a9d3a", 1, [6, 4]],
  ctilde: ["#888888", 1, [2, 3]],
  segment: ["#e07b00", 2, []],
  loop: ["#c0392b", 2, []],
};
const ZERO_COLORS = ["#e07b00", "#c0392b", "#111111"];
const CASES = ["subcritical", "critical", "supercritical"];

const canvas = document.getElementById("plot");
const ctx = canvas.getContext("2d");
const info = document.getElementById("info");
const inputs = ["r", "theta", "n"].map((id) => document.getElementById(id));

function parseCurves(csv) {
  const groups = new Map();
  for (const line of csv.trim().split("\n").slice(1)) {
    const [name, , re, im] = line.split(",");
    if (!groups.has(name)) groups.set(name, []);
    groups.get(name).push([Number(re), Number(im)]);
  }
  return groups;
}

function view(groups, pts) {
  let [x0, x1, y0, y1] = [Infinity, -Infinity, Infinity, -Infinity];
  const grow = ([x, y]) => {
    x0 = Math.min(x0, x); x1 = Math.max(x1, x);
    y0 = Math.min(y0, y); y1 = Math.max(y1, y);
  };
  for (const [name, g] of groups) if (!name.startsWith("loop_minus") && name !== "ctilde") g.forEach(grow);
  pts.forEach(grow);
  const pad = 0.08 * Math.max(x1 - x0, y1 - y0);
  const scale = Math.min(canvas.width / (x1 - x0 + 2 * pad), canvas.height / (y1 - y0 + 2 * pad));
  const cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
  return ([x, y]) => [canvas.width / 2 + (x - cx) * scale, canvas.height / 2 - (y - cy) * scale];
}

function draw() {
  const [r, theta, n] = inputs.map((el) => Number(el.value));
  inputs.forEach((el) => (document.getElementById(el.id + "-out").textContent = el.value));
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let groups, flat, s;
  try {
    groups = parseCurves(predicted_curves(r, theta, 800));
    flat = zeros(r, theta, n);
    s = summary(r, theta);
  } catch (e) {
    info.innerHTML = `<span class="err">${e.message ?? e}</span>`;
    return;
  }
  const pts = [];
  for (let i = 0; i < flat.length; i += 3) pts.push([flat[i], flat[i + 1], flat[i + 2]]);
  const px = view(groups, pts);

  for (const [name, g] of groups) {
    const [color, width, dash] = COLORS[name] ?? ["#d98cb3", 1, [4, 4]];
    ctx.strokeStyle = color;
    ctx.lineWidth = width;
    ctx.setLineDash(dash);
    ctx.beginPath();
    g.forEach((z, i) => (i ? ctx.lineTo(...px(z)) : ctx.moveTo(...px(z))));
    ctx.stroke();
  }
  ctx.setLineDash([]);
  const counts = [0, 0, 0];
  for (const [x, y, c] of pts) {
    counts[c]++;
    ctx.fillStyle = ZERO_COLORS[c];
    ctx.beginPath();
    ctx.arc(...px([x, y]), 2.5, 0, 2 * Math.PI);
    ctx.fill();
  }
  const ib = Number.isNaN(s[4]) ? "none" : `${s[4].toFixed(4)} ${s[5] < 0 ? "-" : "+"} ${Math.abs(s[5]).toFixed(4)}i`;
  info.textContent =
    `case ${CASES[s[0]]} (R cos θ = ${s[1].toFixed(4)}), i_b = ${ib}\n` +
    `predicted mass  segment ${s[2].toFixed(4)}  loop ${s[3].toFixed(4)}\n` +
    `observed share  segment ${(counts[0] / n).toFixed(4)}  loop ${(counts[1] / n).toFixed(4)}  other ${counts[2]}`;
}

let pending = 0;
function schedule() {
  cancelAnimationFrame(pending);
  pending = requestAnimationFrame(draw);
}

await init();
inputs.forEach((el) => el.addEventListener("input", schedule));
draw();
