// Built with: wasm-bindgen --target web --out-dir www/pkg <path to manifold_rrt_web.wasm>
import init, { plan, kdtree, project } from "./pkg/manifold_rrt_web.js";

const $ = (id) => document.getElementById(id);

function frame(canvas, lo, hi) {
  const ctx = canvas.getContext("2d");
  const scale = canvas.width / (hi - lo);
  const map = ([x, y]) => [(x - lo) * scale, canvas.height - (y - lo) * scale];
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  return { ctx, map, scale };
}

function dot(f, p, r, color) {
  const [x, y] = f.map(p);
  f.ctx.fillStyle = color;
  f.ctx.beginPath();
  f.ctx.arc(x, y, r, 0, 2 * Math.PI);
  f.ctx.fill();
}

function segment(f, a, b, color, width = 1) {
  const [ax, ay] = f.map(a);
  const [bx, by] = f.map(b);
  f.ctx.strokeStyle = color;
  f.ctx.lineWidth = width;
  f.ctx.beginPath();
  f.ctx.moveTo(ax, ay);
  f.ctx.lineTo(bx, by);
  f.ctx.stroke();
}

function polyline(f, pts, color, width) {
  for (let i = 1; i < pts.length; i++) segment(f, pts[i - 1], pts[i], color, width);
}

function runPlan() {
  const problem = $("plan-problem").value;
  const out = JSON.parse(plan(problem, $("plan-strategy").value, Number($("plan-seed").value), 200000));
  if (out.error) {
    $("plan-stats").textContent = out.error;
    return;
  }
  const extent = problem === "torus-slot" ? 2.8 : 1.3;
  const f = frame($("plan-canvas"), -extent, extent);
  out.free.forEach((p) => dot(f, p, 1.2, "#ddd"));
  out.blocked.forEach((p) => dot(f, p, 1.5, "#e88"));
  out.charts.forEach((p) => dot(f, p, 3, "#9c6"));
  out.edges[0].forEach(([a, b]) => segment(f, a, b, "#36c"));
  out.edges[1].forEach(([a, b]) => segment(f, a, b, "#c63"));
  polyline(f, out.path, "#000", 3);
  $("plan-stats").textContent =
    `success ${out.success}  nodes ${out.nodes.join("+")}  CD tests ${out.cd_tests}\n` +
    `collision-branch ratio ${out.collision_branch_ratio.toFixed(3)}  ` +
    `rejection ratio ${out.rejection_ratio.toFixed(3)}  charts ${out.charts.length}`;
}

function runKd() {
  const out = JSON.parse(
    kdtree(Number($("kd-points").value), Number($("kd-r").value), 3000, Number($("kd-seed").value)),
  );
  if (out.error) {
    $("kd-stats").textContent = out.error;
    return;
  }
  const f = frame($("kd-canvas"), 0, 1);
  const box = ([lo, hi], fill, stroke) => {
    const [x0, y0] = f.map(lo);
    const [x1, y1] = f.map(hi);
    if (fill) {
      f.ctx.fillStyle = fill;
      f.ctx.fillRect(x0, y1, x1 - x0, y0 - y1);
    }
    f.ctx.strokeStyle = stroke;
    f.ctx.strokeRect(x0, y1, x1 - x0, y0 - y1);
  };
  out.cells.forEach((c) => box(c, null, "#ccc"));
  out.rects.forEach((r) => box(r, "rgba(80,140,220,0.15)", "#58c"));
  out.samples.forEach((p) => dot(f, p, 1, "#888"));
  polyline(f, out.points, "#c33", 1.5);
  $("kd-stats").textContent =
    `${out.rects.length} leaves, sampling volume ${out.total_volume.toFixed(4)}`;
}

function drawProjection(query) {
  const angle = (Number($("proj-angle").value) * Math.PI) / 180;
  const f = frame($("proj-canvas"), -2, 2);
  const circle = [];
  for (let i = 0; i <= 180; i++) {
    const t = (2 * Math.PI * i) / 180;
    circle.push([Math.cos(t), Math.sin(t)]);
  }
  polyline(f, circle, "#444", 1.5);
  const c = [Math.cos(angle), Math.sin(angle)];
  const t = [-Math.sin(angle), Math.cos(angle)];
  segment(f, [c[0] - 3 * t[0], c[1] - 3 * t[1]], [c[0] + 3 * t[0], c[1] + 3 * t[1]], "#9c6");
  dot(f, c, 4, "#9c6");
  if (!query) return;
  const out = JSON.parse(project(query[0], query[1], angle));
  if (out.error) {
    $("proj-stats").textContent = out.error;
    return;
  }
  dot(f, out.query, 4, "#000");
  dot(f, out.tangent, 3, "#9c6");
  const lines = [`query (${out.query.map((v) => v.toFixed(3)).join(", ")})`];
  if (out.pseudo_inverse) {
    segment(f, out.query, out.pseudo_inverse, "#36c", 2);
    dot(f, out.pseudo_inverse, 4, "#36c");
    lines.push(`normal: (${out.pseudo_inverse.map((v) => v.toFixed(4)).join(", ")})`);
  } else {
    lines.push("normal: failed");
  }
  if (out.orthogonal) {
    segment(f, out.tangent, out.orthogonal, "#e80", 2);
    dot(f, out.orthogonal, 4, "#e80");
    lines.push(`chart: (${out.orthogonal.map((v) => v.toFixed(4)).join(", ")})`);
  } else {
    lines.push("chart: no solution along this chart's normal");
  }
  $("proj-stats").textContent = lines.join("\n");
}

await init();
let lastQuery = [1.4, 0.9];
$("plan-run").onclick = runPlan;
$("kd-run").onclick = runKd;
$("proj-angle").oninput = () => drawProjection(lastQuery);
$("proj-canvas").onclick = (ev) => {
  const canvas = ev.target;
  const rect = canvas.getBoundingClientRect();
  const s = canvas.width / 4;
  lastQuery = [(ev.clientX - rect.left) / s - 2, 2 - (ev.clientY - rect.top) / s];
  drawProjection(lastQuery);
};
runPlan();
runKd();
drawProjection(lastQuery);
