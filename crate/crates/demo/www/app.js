import init, { describe, verify, solve, generate } from "./pkg/quota_alloc_demo.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function el(name, attrs, parent) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (parent) parent.appendChild(node);
  return node;
}

function draw(graph, given = [], found = []) {
  const svg = $("graph");
  svg.replaceChildren();
  const rows = Math.max(graph.applicants.length, graph.projects.length, 1);
  const height = Math.max(420, rows * 48 + 40);
  svg.setAttribute("viewBox", `0 0 600 ${height}`);
  const y = (i, count) => 30 + (i + 0.5) * ((height - 60) / count);
  const ax = 110, px = 470;
  const apos = graph.applicants.map((_, i) => y(i, graph.applicants.length));
  const ppos = graph.projects.map((_, j) => y(j, graph.projects.length));
  const key = (a, p) => `${a}:${p}`;
  const givenSet = new Set(given.map(([a, p]) => key(a, p)));
  const foundSet = new Set(found.map(([a, p]) => key(a, p)));
  const load = new Array(graph.projects.length).fill(0);
  for (const [, p] of found.length ? found : given) load[p] += 1;

  for (const e of graph.edges) {
    const cls = foundSet.has(key(e.a, e.p)) ? "edge found" : givenSet.has(key(e.a, e.p)) ? "edge given" : "edge";
    el("line", { class: cls, x1: ax, y1: apos[e.a], x2: px, y2: ppos[e.p] }, svg);
    const t = 0.18;
    const label = el("text", {
      class: "rank",
      x: ax + (px - ax) * t,
      y: apos[e.a] + (ppos[e.p] - apos[e.a]) * t - 3,
    }, svg);
    label.textContent = e.rank;
  }
  graph.applicants.forEach((name, i) => {
    const g = el("g", { class: "applicant" }, svg);
    el("circle", { cx: ax, cy: apos[i], r: 14 }, g);
    const t = el("text", { x: ax - 22, y: apos[i] + 4, "text-anchor": "end" }, g);
    t.textContent = name;
  });
  graph.projects.forEach((p, j) => {
    const g = el("g", { class: load[j] > 0 ? "project open" : "project" }, svg);
    el("rect", { x: px, y: ppos[j] - 14, width: 28, height: 28, rx: 4 }, g);
    const t = el("text", { x: px + 36, y: ppos[j] + 4 }, g);
    t.textContent = `${p.name} [${p.lower}/${p.upper}]` + (load[j] ? ` load ${load[j]}` : "");
  });
}

function show(json, describeAnswer) {
  const r = JSON.parse(json);
  if (!r.ok) {
    $("status").textContent = "error: " + r.error;
    return;
  }
  $("status").textContent = describeAnswer(r);
  draw(r.graph, r.given || [], r.pairs || []);
}

function refresh() {
  const r = JSON.parse(describe($("instance").value));
  if (r.ok) draw(r.graph);
  else $("status").textContent = "error: " + r.error;
}

async function main() {
  await init();
  $("gen").onclick = () => {
    const r = JSON.parse(generate($("kind").value, +$("seed").value, +$("n").value, +$("m").value));
    if (!r.ok) {
      $("status").textContent = "error: " + r.error;
      return;
    }
    $("instance").value = r.text;
    $("matching").value = "";
    $("status").textContent = "";
    refresh();
  };
  $("instance").onchange = refresh;
  $("verify-popular").onclick = () =>
    show(verify($("instance").value, $("matching").value, "popular"), (r) =>
      r.status === "found"
        ? `Not popular: the green matching wins by ${r.margin} vote(s).\n${r.text}`
        : "Popular: no feasible matching is preferred by more applicants.");
  $("verify-pareto").onclick = () =>
    show(verify($("instance").value, $("matching").value, "pareto"), (r) =>
      r.status === "found"
        ? `Not Pareto optimal: the green matching makes nobody worse off.\n${r.text}`
        : "Pareto optimal.");
  $("solve").onclick = () =>
    show(solve($("instance").value), (r) => {
      if (r.status !== "found") return "No perfect Pareto optimal matching exists.";
      $("matching").value = r.text;
      return "Perfect Pareto optimal matching:\n" + r.text;
    });
  $("gen").click();
}

main();
