#include "levymult/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levymult/errors.hpp"

namespace levymult {

namespace {

using nlohmann::json;

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex numbers are [re, im] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

json atoms_to_json(const std::vector<Atom>& atoms) {
  json out = json::array();
  for (const auto& a : atoms) out.push_back(json::array({a.z, a.mass}));
  return out;
}

std::vector<Atom> atoms_from_json(const json& j) {
  std::vector<Atom> atoms;
  for (const auto& entry : j) {
    Atom a;
    a.z = entry.at(0).get<Vec>();
    a.mass = entry.at(1).get<double>();
    atoms.push_back(std::move(a));
  }
  return atoms;
}

json spectral_to_json(const std::vector<SpectralAtom>& atoms) {
  json out = json::array();
  for (const auto& a : atoms) out.push_back(json::array({a.theta, a.mass}));
  return out;
}

std::vector<SpectralAtom> spectral_from_json(const json& j) {
  std::vector<SpectralAtom> atoms;
  for (const auto& entry : j) {
    SpectralAtom a;
    a.theta = entry.at(0).get<Vec>();
    a.mass = entry.at(1).get<double>();
    atoms.push_back(std::move(a));
  }
  return atoms;
}

json parse(const std::string& text) {
  return json::parse(text);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// A nested document may be inline JSON or a string naming a file.
json resolve(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string())
    return json::parse(slurp(base_dir / j.get<std::string>()));
  return j;
}

LevyMeasure measure_from_json(const json& j);
SphericalPair pair_from_json(const json& j);
JumpModulator modulator_from_json(const json& j, bool for_atomic);
ComplexMatrix matrix_from_json(const json& j);

LevyMeasure measure_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  const int dim = j.at("dim").get<int>();
  if (type == "atomic")
    return LevyMeasure::atomic(dim, atoms_from_json(j.at("atoms")));
  if (type == "stable_polar")
    return LevyMeasure::stable_polar(dim, j.at("alpha").get<double>(),
                                     spectral_from_json(j.at("spectral")));
  if (type == "polar_product") {
    const json& r = j.at("radial");
    const std::string kind = r.at("kind").get<std::string>();
    RadialMeasure radial;
    if (kind == "point_mass")
      radial = PointMassRadial{r.at("r").get<double>(), r.at("mass").get<double>()};
    else if (kind == "exp_over_r")
      radial = ExpOverRRadial{};
    else
      throw std::invalid_argument("unknown radial kind: " + kind);
    return LevyMeasure::polar_product(dim, radial,
                                      spectral_from_json(j.at("spectral")));
  }
  throw std::invalid_argument("unknown measure type: " + type);
}

JumpModulator modulator_from_json(const json& j, bool for_atomic) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant")
    return JumpModulator::constant(complex_from_json(j.at("value")));
  std::vector<cplx> values;
  for (const auto& v : j.at("values")) values.push_back(complex_from_json(v));
  if (kind == "table")
    return for_atomic ? JumpModulator::table_on_atoms(std::move(values))
                      : JumpModulator::radial_angular(std::move(values));
  if (kind == "table_on_atoms")
    return JumpModulator::table_on_atoms(std::move(values));
  if (kind == "radial_angular")
    return JumpModulator::radial_angular(std::move(values));
  throw std::invalid_argument("unknown modulator kind: " + kind);
}

SphericalPair pair_from_json(const json& j) {
  if (j.contains("circle")) {
    const json& c = j.at("circle");
    const int n = c.at("n").get<int>();
    const double harmonic = c.value("harmonic", 0.0);
    const bool relaxed = j.value("relaxed", false);
    return lebesgue_circle(
        n, [harmonic](double s) { return cis(harmonic * s); }, relaxed);
  }
  const int dim = j.at("dim").get<int>();
  std::vector<cplx> modulator;
  for (const auto& v : j.at("modulator"))
    modulator.push_back(complex_from_json(v));
  return SphericalPair::make(dim, spectral_from_json(j.at("atoms")),
                             std::move(modulator), j.value("relaxed", false));
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto re = j.at("re").get<std::vector<std::vector<double>>>();
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = j.at("im").get<std::vector<std::vector<double>>>();
  return ComplexMatrix::from_parts(re, im);
}

Symbol symbol_from_json(const json& doc, const std::filesystem::path& base_dir) {
  const std::string type = doc.at("type").get<std::string>();
  if (type == "general") {
    const LevyMeasure V = measure_from_json(resolve(doc.at("measure"), base_dir));
    const JumpModulator phi =
        doc.contains("phi")
            ? modulator_from_json(resolve(doc.at("phi"), base_dir), V.is_atomic())
            : JumpModulator::constant(1.0);
    if (doc.contains("pair"))
      return general_symbol(V, phi, pair_from_json(resolve(doc.at("pair"), base_dir)));
    return general_symbol(V, phi);
  }
  if (type == "quadratic_form") {
    const ComplexMatrix A = matrix_from_json(resolve(doc.at("A"), base_dir));
    RealMatrix B = RealMatrix::identity(A.n);
    if (doc.contains("B")) {
      const ComplexMatrix parsed = matrix_from_json(resolve(doc.at("B"), base_dir));
      B = RealMatrix::zero(parsed.n);
      for (int i = 0; i < parsed.n; ++i)
        for (int j2 = 0; j2 < parsed.n; ++j2)
          B.at(i, j2) = parsed.at(i, j2).real();
    }
    return quadratic_form_symbol(A, B);
  }
  if (type == "stable")
    return stable_symbol(doc.at("alpha").get<double>(),
                         pair_from_json(resolve(doc.at("spectral"), base_dir)));
  if (type == "tempered")
    return tempered_symbol(pair_from_json(resolve(doc.at("spectral"), base_dir)));
  if (type == "ratio")
    return ratio_symbol(measure_from_json(resolve(doc.at("nu1"), base_dir)),
                        measure_from_json(resolve(doc.at("nu2"), base_dir)));
  if (type == "truncated") {
    const LevyMeasure V = measure_from_json(resolve(doc.at("measure"), base_dir));
    const JumpModulator phi =
        doc.contains("phi")
            ? modulator_from_json(resolve(doc.at("phi"), base_dir), true)
            : JumpModulator::constant(1.0);
    return truncated_symbol(V, phi, doc.at("u").get<double>());
  }
  if (type == "beurling_ahlfors") return beurling_ahlfors_symbol();
  throw std::invalid_argument("unknown symbol type: " + type);
}

}  // namespace

std::string measure_to_json(const LevyMeasure& measure) {
  json j;
  j["dim"] = measure.dimension();
  if (measure.is_atomic()) {
    j["type"] = "atomic";
    j["atoms"] = atoms_to_json(measure.as_atomic().atoms);
  } else if (measure.is_stable_polar()) {
    const auto& sp = measure.as_stable_polar();
    j["type"] = "stable_polar";
    j["alpha"] = sp.alpha;
    j["spectral"] = spectral_to_json(sp.spectral);
  } else {
    const auto& pp = measure.as_polar_product();
    j["type"] = "polar_product";
    if (const auto* pm = std::get_if<PointMassRadial>(&pp.radial))
      j["radial"] = {{"kind", "point_mass"}, {"r", pm->r}, {"mass", pm->mass}};
    else
      j["radial"] = {{"kind", "exp_over_r"}};
    j["spectral"] = spectral_to_json(pp.spectral);
  }
  return j.dump(2);
}

LevyMeasure measure_from_json_text(const std::string& text) {
  return measure_from_json(parse(text));
}

LevyMeasure measure_from_file(const std::filesystem::path& path) {
  return measure_from_json(parse(slurp(path)));
}

std::string modulator_to_json(const JumpModulator& phi) {
  json j;
  if (phi.is_constant()) {
    j["kind"] = "constant";
    j["value"] = complex_to_json(phi.at(0));
  } else {
    j["kind"] = phi.kind() == JumpModulator::Kind::table_on_atoms
                    ? "table_on_atoms"
                    : "radial_angular";
    json values = json::array();
    for (std::size_t i = 0; i < phi.table_size(); ++i)
      values.push_back(complex_to_json(phi.at(i)));
    j["values"] = values;
  }
  return j.dump(2);
}

JumpModulator modulator_from_json_text(const std::string& text, bool for_atomic) {
  return modulator_from_json(parse(text), for_atomic);
}

std::string pair_to_json(const SphericalPair& pair) {
  json j;
  j["dim"] = pair.dim;
  j["atoms"] = spectral_to_json(pair.atoms);
  json values = json::array();
  for (const auto& v : pair.modulator) values.push_back(complex_to_json(v));
  j["modulator"] = values;
  j["relaxed"] = pair.relaxed;
  return j.dump(2);
}

SphericalPair pair_from_json_text(const std::string& text) {
  return pair_from_json(parse(text));
}

std::string matrix_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row_re = json::array(), row_im = json::array();
    for (int j = 0; j < m.n; ++j) {
      row_re.push_back(m.at(i, j).real());
      row_im.push_back(m.at(i, j).imag());
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  return json{{"re", re}, {"im", im}}.dump(2);
}

ComplexMatrix matrix_from_json_text(const std::string& text) {
  return matrix_from_json(parse(text));
}

ComplexMatrix matrix_from_file(const std::filesystem::path& path) {
  return matrix_from_json(parse(slurp(path)));
}

Symbol symbol_from_json_text(const std::string& text,
                             const std::filesystem::path& base_dir) {
  return symbol_from_json(parse(text), base_dir);
}

Symbol symbol_from_file(const std::filesystem::path& path) {
  return symbol_from_json(parse(slurp(path)),
                          path.has_parent_path() ? path.parent_path()
                                                 : std::filesystem::path("."));
}

std::string validation_to_json(const ValidationReport& report) {
  return json{{"small_jump_moment", report.small_jump_moment},
              {"tail_mass", report.tail_mass},
              {"integrable", report.integrable},
              {"detail", report.detail}}
      .dump(2);
}

std::string norm_report_to_json(const NormReport& report) {
  return json{{"p", report.p},
              {"input_norm", report.input_norm},
              {"output_norm", report.output_norm},
              {"ratio", report.ratio},
              {"bound", report.bound},
              {"discretization_suspect", report.discretization_suspect}}
      .dump(2);
}

std::string stat_report_to_json(const StatReport& report) {
  return json{{"estimate", report.estimate},
              {"std_error", report.std_error},
              {"bound", report.bound},
              {"bound_std_error", report.bound_std_error},
              {"sigma_margin", report.sigma_margin},
              {"pass", report.pass},
              {"bug", report.bug},
              {"paths", report.paths}}
      .dump(2);
}

std::string pairing_report_to_json(const PairingReport& report) {
  return json{{"estimate", complex_to_json(report.mc_value)},
              {"std_error", report.mc_std_error},
              {"bound", complex_to_json(report.fourier_value)},
              {"fourier_refine_delta", report.fourier_refine_delta},
              {"combined_sigma", report.combined_sigma},
              {"sigma_margin", report.deviation_sigmas},
              {"pass", report.pass},
              {"paths", report.paths}}
      .dump(2);
}

std::string ecf_report_to_json(const EcfReport& report) {
  json points = json::array();
  for (std::size_t i = 0; i < report.xis.size(); ++i)
    points.push_back({{"xi", report.xis[i]},
                      {"empirical", complex_to_json(report.empirical[i])},
                      {"exact", complex_to_json(report.exact[i])},
                      {"std_error", report.std_error[i]}});
  return json{{"points", points},
              {"max_sigma_deviation", report.max_sigma_deviation},
              {"pass", report.pass},
              {"paths", report.paths}}
      .dump(2);
}

std::string certificate_to_json(const CertificateReport& report) {
  return json{{"reproduces_target", report.reproduces_target},
              {"max_symbol_deviation", report.max_symbol_deviation},
              {"forced_lhs", complex_to_json(report.forced_lhs)},
              {"forced_rhs", report.forced_rhs},
              {"coefficient_residual", report.coefficient_residual},
              {"max_modulator", report.max_modulator},
              {"implied_lower_bound", report.implied_lower_bound}}
      .dump(2);
}

std::string decomposition_to_json(const Decomposition& decomposition) {
  json atoms = json::array();
  for (std::size_t k = 0; k < decomposition.pair.atoms.size(); ++k)
    atoms.push_back(
        {{"direction", decomposition.pair.atoms[k].theta},
         {"mass", decomposition.pair.atoms[k].mass},
         {"modulator", complex_to_json(decomposition.pair.modulator[k])}});
  return json{{"branch", decomposition.branch == DecompositionBranch::normal
                             ? "normal"
                             : "split"},
              {"scale", decomposition.scale},
              {"commutator_norm", decomposition.commutator_norm},
              {"atoms", atoms}}
      .dump(2);
}

std::string subordination_to_json(const SubordinationReport& report) {
  return json{{"paths", report.paths},
              {"events", report.events},
              {"violations", report.violations},
              {"worst_slack", report.worst_slack},
              {"pass", report.violations == 0}}
      .dump(2);
}

}  // namespace levymult
