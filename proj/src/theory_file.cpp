// Copyright 2026 The conelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "conelab/theory_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "conelab/builtins.hpp"
#include "json.hpp"

namespace conelab {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
  const std::string field = where.empty() ? key : where + "." + key;
  if (!obj.contains(key)) fail(field, "missing");
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "number is not finite");
  return x;
}

Vec vector_of(const json& v, int n, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array");
  if (static_cast<int>(v.size()) != n)
    fail(field, "expected " + std::to_string(n) + " numbers, got " +
                    std::to_string(v.size()));
  Vec out(n);
  for (int i = 0; i < n; ++i)
    out(i) = number(v[i], field + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<Vec> vectors_of(const json& v, int n, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of arrays");
  std::vector<Vec> out;
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(vector_of(v[i], n, field + "[" + std::to_string(i) + "]"));
  return out;
}

CMat operator_of(const json& v, int d, const std::string& field) {
  if (!v.is_object()) fail(field, "expected an object with 're' and optional 'im'");
  CMat out = CMat::Zero(d, d);
  for (const char* part : {"re", "im"}) {
    if (!v.contains(part)) {
      if (std::string(part) == "re") fail(field + ".re", "missing");
      continue;
    }
    const json& rows = v.at(part);
    const std::string f = field + "." + part;
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
      fail(f, "expected " + std::to_string(d) + " rows");
    for (int i = 0; i < d; ++i) {
      Vec r = vector_of(rows[i], d, f + "[" + std::to_string(i) + "]");
      for (int j = 0; j < d; ++j)
        out(i, j) += std::string(part) == "re" ? cplx(r(j), 0) : cplx(0, r(j));
    }
  }
  if ((out - out.adjoint()).norm() > 1e-12) fail(field, "operator is not Hermitian");
  return out;
}

}  // namespace

LoadedTheory parse_theory(const std::string& text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");

  const json& name_v = need(doc, "name", "");
  if (!name_v.is_string()) fail("name", "expected a string");
  const json& dim_v = need(doc, "dim", "");
  if (!dim_v.is_number_integer() || dim_v.get<int>() < 1)
    fail("dim", "expected a positive integer");
  const int dim = dim_v.get<int>();
  const double t = tol > 0 ? tol : kDefaultTolerance;

  const json& backend = need(doc, "backend", "");
  if (!backend.is_object()) fail("backend", "expected an object");
  const json& kind = need(backend, "kind", "backend");
  if (!kind.is_string()) fail("backend.kind", "expected a string");

  Cone cone;
  std::vector<CMat> frame;
  if (kind == "polyhedral") {
    auto gens = vectors_of(need(doc, "effect_generators", ""), dim, "effect_generators");
    if (gens.empty()) fail("effect_generators", "at least one generator required");
    try {
      cone = Cone::polyhedral(gens, t);
    } catch (const Error& e) {
      fail("effect_generators", e.what());
    }
  } else if (kind == "psd") {
    const json& hd_v = need(backend, "hilbert_dim", "backend");
    if (!hd_v.is_number_integer() || hd_v.get<int>() < 1)
      fail("backend.hilbert_dim", "expected a positive integer");
    const int hd = hd_v.get<int>();
    std::vector<CMat> basis;
    if (backend.contains("basis_operators")) {
      const json& ops = backend.at("basis_operators");
      if (!ops.is_array() || static_cast<int>(ops.size()) != dim)
        fail("backend.basis_operators", "expected " + std::to_string(dim) + " operators");
      for (int k = 0; k < dim; ++k)
        basis.push_back(
            operator_of(ops[k], hd, "backend.basis_operators[" + std::to_string(k) + "]"));
    } else {
      if (dim != hd * hd)
        fail("backend.basis_operators", "required unless dim = hilbert_dim^2");
      basis = gell_mann_basis(hd);
    }
    // Coordinate k of an effect H is Tr(H B_k).
    Mat emb(dim, hd * hd);
    for (int k = 0; k < dim; ++k)
      for (int p = 0; p < hd * hd; ++p)
        emb(k, p) = (basis[k] * vec_to_herm(Vec::Unit(hd * hd, p), hd)).trace().real();
    try {
      cone = Cone::psd(hd, emb, t);
    } catch (const Error& e) {
      fail("backend.basis_operators", e.what());
    }
    if (dim == hd * hd)
      for (int k = 0; k < dim; ++k) frame.push_back(cone.preimage(Vec::Unit(dim, k)));
  } else {
    fail("backend.kind", "expected \"polyhedral\" or \"psd\"");
  }

  Vec unit = vector_of(need(doc, "unit_effect", ""), dim, "unit_effect");
  auto ref = vectors_of(need(doc, "reference_observable", ""), dim, "reference_observable");
  if (ref.empty()) fail("reference_observable", "at least one effect required");
  std::vector<Mat> ts;
  const json& tg = need(doc, "transformation_generators", "");
  if (!tg.is_array()) fail("transformation_generators", "expected an array");
  for (size_t i = 0; i < tg.size(); ++i) {
    const std::string f = "transformation_generators[" + std::to_string(i) + "]";
    ts.push_back(unvec_rows(vector_of(tg[i], dim * dim, f), dim, dim));
  }

  LoadedTheory out;
  out.system = make_system(name_v.get<std::string>(), cone, unit, ref, ts, frame);

  if (doc.contains("bipartite")) {
    const json& bp = doc.at("bipartite");
    if (!bp.is_object()) fail("bipartite", "expected an object");
    const bool psd_flag = bp.contains("psd") && bp.at("psd").is_boolean() && bp.at("psd").get<bool>();
    if (bp.contains("effect_generators") && psd_flag)
      fail("bipartite", "give either effect_generators or psd, not both");
    if (bp.contains("effect_generators")) {
      auto gens = vectors_of(bp.at("effect_generators"), dim * dim, "bipartite.effect_generators");
      if (gens.empty()) fail("bipartite.effect_generators", "at least one generator required");
      try {
        out.composite_override = Cone::polyhedral(gens, t);
      } catch (const Error& e) {
        fail("bipartite.effect_generators", e.what());
      }
    } else if (psd_flag) {
      if (cone.is_polyhedral()) fail("bipartite.psd", "requires a psd backend");
      out.composite_override = tensor_psd_cone(cone, cone);
    }
    if (bp.contains("designated_phi"))
      out.designated_phi = vector_of(bp.at("designated_phi"), dim * dim, "bipartite.designated_phi");
  }
  return out;
}

LoadedTheory load_theory_file(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_theory(buf.str(), tol);
}

LoadedTheory load_theory(const std::string& name_or_path, double tol) {
  if (!is_builtin_name(name_or_path)) return load_theory_file(name_or_path, tol);
  BuiltinSpec spec;
  try {
    spec = parse_builtin(name_or_path);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  LoadedTheory out;
  out.builtin = true;
  out.system = tol > 0 ? with_tolerance(spec.system, tol) : spec.system;
  if (spec.composite_override)
    out.composite_override =
        tol > 0 ? spec.composite_override->with_tolerance(tol) : *spec.composite_override;
  out.designated_phi = spec.designated_pfaith_candidate;
  return out;
}

BipartiteSystem compose_loaded(const LoadedTheory& a, const LoadedTheory& b) {
  if (a.system.name == b.system.name)
    return compose(a.system, b.system, a.composite_override, a.designated_phi);
  const bool psd_a = !a.system.effect_cone.is_polyhedral();
  const bool psd_b = !b.system.effect_cone.is_polyhedral();
  if (psd_a && psd_b)
    return compose(a.system, b.system, tensor_psd_cone(a.system.effect_cone, b.system.effect_cone));
  if (psd_a || psd_b)
    throw InvalidArgument("cannot compose a psd system with a polyhedral one");
  return compose(a.system, b.system);
}

}  // namespace conelab
