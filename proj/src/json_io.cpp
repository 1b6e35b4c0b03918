#include "hzk/json_io.hpp"

#include <stdexcept>

namespace hzk {

Json scalar_to_json(const Rational& r) { return r.str(); }

Rational scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("scalar: expected string or integer");
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from_json(const Json& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  Matrix m(rows, cols);
  const Json& entries = j.at("entries");
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = scalar_from_json(entries.at(r).at(c));
  return m;
}

Json series_to_json(const TruncatedSeries& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs) {
    Json v = Json::array();
    for (const auto& x : c.coords) v.push_back(scalar_to_json(x));
    coeffs.push_back(std::move(v));
  }
  return Json{{"ctx", s.ctx->name()}, {"level", s.level}, {"coeffs", coeffs}};
}

TruncatedSeries series_from_json(const Json& j) {
  const AlgebraCtx& ctx = ctx_by_name(j.at("ctx").get<std::string>());
  int level = j.at("level").get<int>();
  const Json& coeffs = j.at("coeffs");
  if (static_cast<int>(coeffs.size()) != level)
    throw std::invalid_argument("series: level does not match coefficients");
  std::vector<AlgebraElem> cs;
  for (const Json& v : coeffs) {
    std::vector<Rational> coords;
    for (const Json& x : v) coords.push_back(scalar_from_json(x));
    cs.push_back(ctx.elem(std::move(coords)));
  }
  return TruncatedSeries::from_coeffs(ctx, std::move(cs));
}

Json residue_to_json(const PolyResidue& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs) {
    Json v = Json::array();
    for (const auto& x : c.coords) v.push_back(scalar_to_json(x));
    coeffs.push_back(std::move(v));
  }
  return Json{{"ctx", f.ctx->name()},
              {"level", f.level},
              {"basis", "falling"},
              {"coeffs", coeffs}};
}

PolyResidue residue_from_json(const Json& j) {
  if (j.value("basis", "falling") != "falling")
    throw std::invalid_argument("residue: unsupported basis");
  Json as_series = j;
  as_series.erase("basis");
  TruncatedSeries s = series_from_json(as_series);
  PolyResidue f = PolyResidue::zero(*s.ctx, s.level);
  f.coeffs = s.coeffs;
  return f;
}

Json coalgebra_to_json(const FinCoalgebra& c) {
  Json comult = Json::array();
  for (int b = 0; b < c.dim(); ++b) {
    Json terms = Json::array();
    for (const auto& [ij, coef] : c.comult(b))
      terms.push_back(Json::array({ij.first, ij.second, scalar_to_json(coef)}));
    comult.push_back(std::move(terms));
  }
  Json counit = Json::array();
  for (int b = 0; b < c.dim(); ++b) counit.push_back(scalar_to_json(c.counit(b)));
  Json out{{"name", c.name()},
           {"basis", c.labels()},
           {"counit", counit},
           {"comult", comult}};
  if (c.point()) out["point"] = *c.point();
  return out;
}

FinCoalgebra coalgebra_from_json(const Json& j) {
  std::vector<std::string> labels = j.at("basis").get<std::vector<std::string>>();
  std::vector<Rational> counit;
  for (const Json& v : j.at("counit")) counit.push_back(scalar_from_json(v));
  std::vector<SparseTensor> comult(labels.size());
  const Json& cm = j.at("comult");
  for (size_t b = 0; b < labels.size(); ++b)
    for (const Json& term : cm.at(b)) {
      int p = term.at(0).get<int>();
      int q = term.at(1).get<int>();
      comult[b][{p, q}] = scalar_from_json(term.at(2));
    }
  std::optional<int> point;
  if (j.contains("point")) point = j.at("point").get<int>();
  return FinCoalgebra(j.value("name", "coalgebra"), std::move(labels),
                      std::move(counit), std::move(comult), point);
}

Json species_to_json(const LinearSpecies& s) {
  Json gens = Json::array();
  for (int n = 0; n <= s.bound(); ++n) {
    Json level = Json::array();
    for (int i = 0; i + 1 < n; ++i) level.push_back(matrix_to_json(s.gen(n, i)));
    gens.push_back(std::move(level));
  }
  return Json{{"bound", s.bound()}, {"ranks", s.ranks()}, {"generators", gens}};
}

LinearSpecies species_from_json(const Json& j) {
  std::vector<int> ranks = j.at("ranks").get<std::vector<int>>();
  std::vector<std::vector<Matrix>> gens(ranks.size());
  const Json& g = j.at("generators");
  for (size_t n = 0; n < ranks.size(); ++n)
    for (const Json& m : g.at(n)) gens[n].push_back(matrix_from_json(m));
  return LinearSpecies(std::move(ranks), std::move(gens));
}

Json presheaf_to_json(const dk::Presheaf& f) {
  Json gens = Json::object();
  for (const dk::Mor& r : f.datum().middle_maps())
    gens[r.label()] = matrix_to_json(f.act(r));
  return Json{{"datum", dk::instance_name(f.datum().kind())},
              {"bound", f.datum().bound()},
              {"ranks", f.ranks()},
              {"generators", gens}};
}

dk::Presheaf presheaf_from_json(const dk::DoldKanDatum& datum, const Json& j) {
  if (j.at("datum").get<std::string>() != dk::instance_name(datum.kind()))
    throw std::invalid_argument("presheaf: instance mismatch");
  std::vector<int> ranks = j.at("ranks").get<std::vector<int>>();
  std::map<dk::Mor, Matrix> action;
  const Json& gens = j.at("generators");
  for (const dk::Mor& r : datum.middle_maps()) {
    auto it = gens.find(r.label());
    if (it == gens.end())
      throw std::invalid_argument("presheaf: missing generator " + r.label());
    action[r] = matrix_from_json(*it);
  }
  return dk::Presheaf(datum, std::move(ranks), std::move(action));
}

Json algebra_ctx_to_json(const AlgebraCtx& a) {
  Json unit = Json::array();
  AlgebraElem one = a.one();
  for (const auto& x : one.coords) unit.push_back(scalar_to_json(x));
  Json mul = Json::array();
  for (int i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.dim(); ++j) {
      Json vec = Json::array();
      for (const auto& c : a.structure(i, j)) vec.push_back(scalar_to_json(c));
      row.push_back(std::move(vec));
    }
    mul.push_back(std::move(row));
  }
  return Json{{"name", a.name()},
              {"dim", a.dim()},
              {"basis", a.labels()},
              {"commutative", a.commutative()},
              {"unit", unit},
              {"mul", mul}};
}

}  // namespace hzk
