import init, { expand_series, identity_ids, verify_identity, dissection_matrix } from "./pkg/cubic_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(el, text, cls = "") {
  el.textContent = text;
  el.className = cls;
}

await init();

for (const id of JSON.parse(identity_ids())) {
  const opt = document.createElement("option");
  opt.textContent = id;
  $("identity").appendChild(opt);
}

$("expand").onclick = () => {
  const r = JSON.parse(expand_series($("expr").value, num("expand-order")));
  if (r.error) return show($("expand-out"), r.error, "fail");
  const lines = [r.series];
  if (r.coefficients.length) {
    const shift = r.offset_twelfths ? `q^(${r.offset_twelfths}/12 + n)` : "q^n";
    lines.push(`coefficients of ${shift}: ${r.coefficients.join(", ")}`);
  }
  show($("expand-out"), lines.join("\n"));
};

$("verify").onclick = () => {
  const r = JSON.parse(verify_identity($("identity").value, num("verify-order")));
  if (r.error) return show($("verify-out"), r.error, "fail");
  const lines = [`${r.lhs}\n  = ${r.rhs}`, `${r.status} through q^${r.order} in ${(r.wall_time_us / 1000).toFixed(1)} ms`];
  const m = r.first_mismatch;
  if (m) lines.push(`first mismatch at q^${m.q_exponent}: ${JSON.stringify(m.lhs)} vs ${JSON.stringify(m.rhs)}`);
  show($("verify-out"), lines.join("\n"), r.status);
};

$("matrix").onclick = () => {
  const r = JSON.parse(dissection_matrix($("kind").value, num("degree")));
  if (r.error) return show($("matrix-out"), r.error, "fail");
  const lines = r.matrix.entries.map((row) => row.join("\t"));
  if (r.det !== null) lines.push("", `det = ${r.det}`);
  if (r.eigen) {
    for (const p of r.eigen.pairs) lines.push(`eigenvalue ${p.eigenvalue}: (${p.eigenvector.join(", ")})`);
  }
  show($("matrix-out"), lines.join("\n"));
};
