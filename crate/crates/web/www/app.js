// Plain-JS front end for the treedelta wasm module. No framework: the
// wasm side returns JSON strings, this file draws SVG and wires inputs.

import init, { generate_tree, analyze, query_closest } from "./pkg/treedelta_web.js";

const $ = (id) => document.getElementById(id);
const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 640;

let current = null; // last analyze() payload

function status(message, isError = true) {
  const el = $("status");
  el.textContent = message || "";
  el.style.color = isError ? "#c0392b" : "#5c9462";
}

function el(tag, attrs, parent) {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  parent.append(node);
  return node;
}

function px(v) {
  return 30 + v * (SIZE - 60);
}

function arcPath(a, b) {
  // Quadratic arc bulging away from the drawing center.
  const mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
  const dx = mx - 0.5, dy = my - 0.5;
  const len = Math.hypot(dx, dy) || 1;
  const bulge = 0.22 * Math.hypot(a.x - b.x, a.y - b.y) + 0.02;
  const cx = mx + (dx / len) * bulge, cy = my + (dy / len) * bulge;
  return `M ${px(a.x)} ${px(a.y)} Q ${px(cx)} ${px(cy)} ${px(b.x)} ${px(b.y)}`;
}

function drawTree(data) {
  const svg = $("tree-svg");
  svg.replaceChildren();
  const vs = data.vertices;

  for (const [u, v] of data.edges) {
    el("line", {
      class: "edge",
      x1: px(vs[u].x), y1: px(vs[u].y),
      x2: px(vs[v].x), y2: px(vs[v].y),
    }, svg);
  }

  // Inset-edge layers: extremes always visible, query hits on demand.
  const maxDp = data.meta.max_dprime, minDp = data.meta.min_dprime;
  for (const r of data.records) {
    if (r.dprime !== maxDp && r.dprime !== minDp) continue;
    const cls = r.dprime === maxDp ? "inset max" : "inset min";
    const path = el("path", { class: cls, d: arcPath(vs[r.xi], vs[r.yi]) }, svg);
    path.append(titleFor(r));
  }
  const hits = el("g", { id: "hits" }, svg);

  const showLabels = vs.length <= 60;
  vs.forEach((v) => {
    el("circle", { class: "vertex", cx: px(v.x), cy: px(v.y), r: vs.length > 120 ? 2 : 3.5 }, svg);
    if (showLabels) {
      el("text", { class: "vlabel", x: px(v.x) + 4, y: px(v.y) - 4 }, svg).textContent = v.label;
    }
  });
  return hits;
}

function titleFor(r) {
  const t = document.createElementNS(SVG_NS, "title");
  t.textContent = `{${r.x}, ${r.y}}  k=${r.k}  dprime=${r.dprime}  adprime=${r.adprime}`;
  return t;
}

function highlight(records) {
  const hits = $("hits");
  if (!hits || !current) return;
  hits.replaceChildren();
  const vs = current.vertices;
  for (const r of records) {
    const path = el("path", { class: "inset hit", d: arcPath(vs[r.xi], vs[r.yi]) }, hits);
    path.append(titleFor(r));
  }
}

function drawHistogram(records) {
  const svg = $("hist-svg");
  svg.replaceChildren();
  if (!records.length) return;
  const values = records.map((r) => r.dprime);
  const lo = Math.min(...values), hi = Math.max(...values);
  const buckets = Math.min(28, hi - lo + 1);
  const width = (hi - lo + 1) / buckets;
  const counts = Array.from({ length: buckets }, () => 0);
  for (const v of values) counts[Math.min(buckets - 1, Math.floor((v - lo) / width))]++;
  const peak = Math.max(...counts);

  counts.forEach((count, i) => {
    const h = count === 0 ? 0 : 4 + (count / peak) * 118;
    const bar = el("rect", {
      class: "bar",
      x: 8 + i * (304 / buckets), y: 132 - h,
      width: Math.max(1, 304 / buckets - 1.5), height: h,
    }, svg);
    const from = lo + i * width, to = lo + (i + 1) * width;
    const t = document.createElementNS(SVG_NS, "title");
    t.textContent = `dprime in [${Math.ceil(from)}, ${Math.ceil(to - 1)}]: ${count} edge(s)`;
    bar.append(t);
    bar.addEventListener("mouseenter", () => {
      for (const b of svg.querySelectorAll(".bar.active")) b.classList.remove("active");
      bar.classList.add("active");
      highlight(current.records.filter((r) => r.dprime >= from && r.dprime < to));
    });
  });
  el("text", { x: 8, y: 146, class: "vlabel" }, svg).textContent = String(lo);
  el("text", { x: 300, y: 146, class: "vlabel", "text-anchor": "end" }, svg).textContent = String(hi);
}

function fillExtremes(data) {
  const body = $("extremes").querySelector("tbody");
  body.replaceChildren();
  const header = document.createElement("tr");
  header.innerHTML = "<th>edge</th><th>k</th><th>dprime</th><th>adprime</th>";
  body.append(header);
  const maxSet = data.records.filter((r) => r.dprime === data.meta.max_dprime);
  const minSet = data.records.filter((r) => r.dprime === data.meta.min_dprime);
  for (const r of [...maxSet.slice(0, 6), ...minSet.slice(0, 6)]) {
    const tr = document.createElement("tr");
    tr.className = "pick";
    tr.innerHTML =
      `<td>{${r.x}, ${r.y}}</td><td>${r.k}</td><td>${r.dprime}</td><td>${r.adprime}</td>`;
    tr.addEventListener("mouseenter", () => highlight([r]));
    body.append(tr);
  }
}

function runAnalyze() {
  try {
    const text = $("edges").value;
    current = JSON.parse(analyze(text));
    const m = current.meta;
    $("stats").innerHTML =
      `n=<b>${m.n}</b> · inset edges m=<b>${m.m}</b> · Wiener D(T)=<b>${m.wiener}</b> · ` +
      `avg distance=<b>${m.avg_distance.num}/${m.avg_distance.den}</b> (${m.avg_distance.decimal}) · ` +
      `drop range <b>${m.min_dprime}…${m.max_dprime}</b>`;
    drawTree(current);
    drawHistogram(current.records);
    fillExtremes(current);
    status(`analyzed ${m.m} inset edges`, false);
    $("query-out").textContent = "";
  } catch (err) {
    status(String(err));
  }
}

function runQuery() {
  if (!current) runAnalyze();
  try {
    const out = JSON.parse(query_closest($("edges").value, $("target").value, $("metric").value));
    highlight(out.records);
    const d = out.deviation;
    const list = out.records
      .map((r) => `{${r.x}, ${r.y}} (dprime=${r.dprime}, adprime=${r.adprime})`)
      .join(", ");
    $("query-out").innerHTML =
      `<p class="legend">${out.records.length} match(es) at deviation ` +
      `${d.num}/${d.den} (${d.decimal}):<br>${list}</p>`;
  } catch (err) {
    status(String(err));
  }
}

function runGenerate() {
  try {
    const n = Number($("n").value), seed = BigInt($("seed").value || 0);
    $("edges").value = generate_tree($("kind").value, n, seed);
    status("", false);
    runAnalyze();
  } catch (err) {
    status(String(err));
  }
}

await init();
$("generate").addEventListener("click", runGenerate);
$("analyze").addEventListener("click", runAnalyze);
$("query").addEventListener("click", runQuery);
runGenerate();
