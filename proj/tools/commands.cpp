// Copyright 2026 The qlsid Authors
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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "qlsid/json_io.hpp"
#include "qlsid/physical_realization.hpp"

#ifndef QLSID_VERSION
#define QLSID_VERSION "0.0.0"
#endif

namespace qls::cli {
namespace {

const Complex I(0.0, 1.0);

struct Loaded {
  std::string path;
  std::string text;
  std::string sha256;
};

std::string Sha256Hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return out.str();
}

Loaded Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParseError, path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  Loaded l{path, buf.str(), ""};
  l.sha256 = Sha256Hex(l.text);
  return l;
}

// Temp file next to the target, then rename, so readers never see a
// partial document.
void WriteAtomic(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kParseError, path + ": cannot write");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::kParseError, path + ": write failed");
  }
  std::filesystem::rename(tmp, target);
}

Json Entry(const Json& value, const char* operation) {
  Json e;
  e["value"] = value;
  e["operation"] = operation;
  return e;
}

Json ErrorJson(const Error& e, const char* operation) {
  Json j;
  j["kind"] = ErrorKindName(e.kind());
  j["message"] = e.what();
  j["operation"] = operation;
  return j;
}

Json Header(const char* command, const std::vector<std::pair<const char*, Loaded>>& inputs,
            const Options& opts) {
  Json h;
  h["schema"] = kSchema;
  h["kind"] = "report";
  h["command"] = command;
  h["tool"] = {{"name", "qlsid"}, {"version", QLSID_VERSION}};
  Json ins = Json::array();
  for (const auto& [role, l] : inputs) {
    ins.push_back({{"role", role}, {"path", l.path}, {"sha256", l.sha256}});
  }
  h["inputs"] = ins;
  h["options"] = {{"tol", opts.tol}, {"seed", opts.seed}};
  return h;
}

std::string Csv(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

QlsSystem LoadSystem(const Loaded& l) { return system_from_json(parse_json(l.text, l.path)); }
GaussianInput LoadInput(const Loaded& l) { return input_from_json(parse_json(l.text, l.path)); }

void RequireSiso(const QlsSystem& sys) {
  if (sys.n_channels() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "this command needs a single-channel system");
  }
}

std::vector<double> Sweep(const SweepOptions& s) {
  if (s.count < 2) throw Error(ErrorKind::kRangeError, "count must be at least 2");
  if (!(s.omega_min > 0.0) || !(s.omega_min < s.omega_max)) {
    throw Error(ErrorKind::kRangeError, "need 0 < omega_min < omega_max");
  }
  return log_grid(s.omega_min, s.omega_max, s.count);
}

int Run(const char* stage, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    std::cerr << "qlsid: " << stage << ": " << e.what() << "\n";
    const bool input = e.kind() == ErrorKind::kParseError || e.kind() == ErrorKind::kRangeError ||
                       e.kind() == ErrorKind::kShapeMismatch;
    return input ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "qlsid: " << stage << ": ParseError: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "qlsid: " << stage << ": " << e.what() << "\n";
    return 2;
  }
}

void RenderText(const Json& report) {
  std::cerr << "qlsid " << report["command"].get<std::string>() << "\n";
  for (const char* section : {"system", "stationary"}) {
    if (!report.contains(section)) continue;
    std::cerr << "  [" << section << "]\n";
    for (const auto& [key, val] : report[section].items()) {
      const Json& v = val.is_object() && val.contains("value") ? val["value"] : val;
      std::cerr << "    " << key << ": " << v.dump() << "\n";
    }
  }
}

// Merge near-equal poles of separately fitted components into one set.
void SnapPoles(std::vector<RationalFn*> fns, double tol) {
  Roots centers;
  std::vector<int> counts;
  for (RationalFn* f : fns) {
    for (const Complex& p : f->poles) {
      bool merged = false;
      for (size_t c = 0; c < centers.size() && !merged; ++c) {
        if (std::abs(centers[c] - p) <= tol * std::max(1.0, std::abs(p))) {
          centers[c] = (centers[c] * static_cast<double>(counts[c]) + p) /
                       static_cast<double>(counts[c] + 1);
          ++counts[c];
          merged = true;
        }
      }
      if (!merged) {
        centers.push_back(p);
        counts.push_back(1);
      }
    }
  }
  for (RationalFn* f : fns) {
    for (Complex& p : f->poles) {
      for (const Complex& c : centers) {
        if (std::abs(c - p) <= tol * std::max(1.0, std::abs(p))) {
          p = c;
          break;
        }
      }
    }
  }
}

PowerSpectrumSISO SpectrumFromCsv(const Loaded& l, int degree) {
  std::istringstream in(l.text);
  std::string line;
  std::vector<std::pair<double, Complex>> s11, s12, s22;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    if (row == 1 && !std::isdigit(static_cast<unsigned char>(line[0])) && line[0] != '-' &&
        line[0] != '.') {
      continue;  // header
    }
    std::vector<double> v;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        size_t used = 0;
        v.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw Error(ErrorKind::kParseError,
                    l.path + ":" + std::to_string(row) + ": bad number '" + cell + "'");
      }
    }
    if (v.size() != 7) {
      throw Error(ErrorKind::kParseError,
                  l.path + ":" + std::to_string(row) + ": expected 7 columns");
    }
    s11.emplace_back(v[0], Complex(v[1], v[2]));
    s12.emplace_back(v[0], Complex(v[3], v[4]));
    s22.emplace_back(v[0], Complex(v[5], v[6]));
  }
  PowerSpectrumSISO ps;
  ps.phi11 = fit_rational_from_samples(s11, degree).fn;
  ps.phi12 = fit_rational_from_samples(s12, degree).fn;
  ps.phi22 = fit_rational_from_samples(s22, degree).fn;
  SnapPoles({&ps.phi11, &ps.phi12, &ps.phi22}, 1e-5);
  return ps;
}

}  // namespace

int cmd_check(const std::string& system_file, const std::optional<std::string>& input_file,
              const Options& opts) {
  return Run("check", [&] {
    const Loaded ls = Load(system_file);
    std::vector<std::pair<const char*, Loaded>> inputs{{"system", ls}};
    std::optional<Loaded> li;
    if (input_file) {
      li = Load(*input_file);
      inputs.emplace_back("input", *li);
    }
    const QlsSystem sys = LoadSystem(ls);
    Json report = Header("check", inputs, opts);
    Json s;
    s["n"] = Entry(sys.n_modes(), "system_model.QlsSystem");
    s["m"] = Entry(sys.n_channels(), "system_model.QlsSystem");
    s["passive"] = Entry(is_passive(sys, opts.tol), "system_model.is_passive");
    s["hurwitz"] = Entry(is_hurwitz(sys), "system_model.is_hurwitz");
    s["minimal"] = Entry(is_minimal(sys), "system_model.is_minimal");
    s["physically_realizable"] = Entry(is_physically_realizable(state_space(sys), opts.tol),
                                       "system_model.is_physically_realizable");
    report["system"] = s;
    Json residuals = Json::array();
    residuals.push_back({{"stage", "state_space"},
                         {"operation", "system_model.physical_realizability_residual"},
                         {"value", physical_realizability_residual(state_space(sys))}});
    if (li) {
      const GaussianInput v = LoadInput(*li);
      Json st;
      try {
        const StationaryState state = stationary_covariance(sys, v);
        st["thermal_numbers"] = Entry(state.thermal_numbers, "stationary.stationary_covariance");
        residuals.push_back({{"stage", "stationary_covariance"},
                             {"operation", "stationary.stationary_covariance"},
                             {"value", state.lyapunov_residual}});
        const GlobalMinimalityReport gm = global_minimality(sys, v);
        st["globally_minimal"] = Entry(gm.is_globally_minimal, "stationary.global_minimality");
        st["pure_dim"] = Entry(gm.pure_dim, "stationary.global_minimality");
        st["mixed_dim"] = Entry(gm.mixed_dim, "stationary.global_minimality");
        residuals.push_back({{"stage", "global_minimality"},
                             {"operation", "stationary.global_minimality"},
                             {"value", gm.residual_series}});
        if (is_passive(sys, opts.tol)) {
          const GlobalMinimalityReport pr = passive_global_minimality(sys, v);
          st["passive_rule_globally_minimal"] =
              Entry(pr.is_globally_minimal, "stationary.passive_global_minimality");
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kParseError) throw;
        st["error"] = ErrorJson(e, "stationary");
      }
      report["stationary"] = st;
    }
    report["residuals"] = residuals;
    RenderText(report);
    WriteAtomic(opts.output, dump_json(report));
  });
}

int cmd_tf(const std::string& system_file, const Options& opts) {
  return Run("tf", [&] {
    const QlsSystem sys = LoadSystem(Load(system_file));
    RequireSiso(sys);
    WriteAtomic(opts.output, dump_json(to_json(tf_rational(sys))));
  });
}

int cmd_realize(const std::string& tf_file, const Options& opts) {
  return Run("realize", [&] {
    const Loaded l = Load(tf_file);
    const TransferFunctionSISO tf = tf_from_json(parse_json(l.text, l.path));
    const PhysicalizationTrace tr = physicalize(tf);
    Json out = to_json(tr.result);
    Json rep = Header("realize", {{"transfer_function", l}}, opts);
    const PhysicalizationResiduals& r = tr.residuals;
    rep["residuals"] = Json::array({
        {{"stage", "lom"}, {"operation", "physical_realization.solve_lom"}, {"value", r.lom}},
        {{"stage", "canonical"}, {"operation", "core_linalg.symplectic_canonical_form"},
         {"value", r.canonical}},
        {{"stage", "flat_t"}, {"operation", "core_linalg.symplectic_square_root"},
         {"value", r.flat_t}},
        {{"stage", "input"}, {"operation", "physical_realization.physicalize"}, {"value", r.input}},
        {{"stage", "realizable"}, {"operation", "system_model.physical_realizability_residual"},
         {"value", r.realizable}},
        {{"stage", "transfer"}, {"operation", "freq_domain.tf_rational"}, {"value", r.transfer}},
    });
    rep["system"] = {{"hurwitz", Entry(is_hurwitz(tr.result), "system_model.is_hurwitz")},
                     {"minimal", Entry(is_minimal(tr.result), "system_model.is_minimal")}};
    out["realization_report"] = rep;
    WriteAtomic(opts.output, dump_json(out));
  });
}

int cmd_spectrum(const std::string& system_file, const std::optional<std::string>& input_file,
                 const SweepOptions& sweep, const Options& opts) {
  return Run("spectrum", [&] {
    const QlsSystem sys = LoadSystem(Load(system_file));
    RequireSiso(sys);
    GaussianInput v = GaussianInput::Vacuum(1);
    if (input_file) v = LoadInput(Load(*input_file));
    if (opts.format == Format::kCsv) {
      std::ostringstream csv;
      csv << "omega,re_psi11,im_psi11,re_psi12,im_psi12,re_psi21,im_psi21,re_psi22,im_psi22\n";
      for (double w : Sweep(sweep)) {
        const CMatrix psi = power_spectrum_eval(sys, v, -I * w);
        csv << Csv(w);
        for (Index i = 0; i < 2; ++i) {
          for (Index j = 0; j < 2; ++j) {
            csv << "," << Csv(psi(i, j).real()) << "," << Csv(psi(i, j).imag());
          }
        }
        csv << "\n";
      }
      WriteAtomic(opts.output, csv.str());
      return;
    }
    const VacuumBasis vb = vacuum_basis(sys, v);
    Json out = to_json(spectrum_components(vb.system));
    out["S0"] = to_json(vb.S0.dense());
    WriteAtomic(opts.output, dump_json(out));
  });
}

int cmd_identify(const std::string& in_file, int degree, const Options& opts) {
  return Run("identify", [&] {
    const Loaded l = Load(in_file);
    const auto first = l.text.find_first_not_of(" \t\r\n");
    PowerSpectrumSISO ps;
    if (first != std::string::npos && l.text[first] == '{') {
      ps = spectrum_from_json(parse_json(l.text, l.path));
    } else {
      ps = SpectrumFromCsv(l, degree);
    }
    const Reconstruction rec = reconstruct_tf_traced(ps);
    Json out = to_json(rec.tf);
    Json rep = Header("identify", {{"spectrum", l}}, opts);
    rep["residuals"] = Json::array({{{"stage", "spectrum"},
                                     {"operation", "identification.reconstruct_tf"},
                                     {"value", rec.spectrum_residual}}});
    Json zeros = Json::array();
    for (const ZeroAssignment& z : rec.real_zeros) {
      zeros.push_back({{"location", z.location}, {"n", z.n_at}, {"m", z.m_at}, {"p", z.p},
                       {"q", z.q}});
    }
    rep["real_zero_assignments"] = Entry(zeros, "identification.real_zero_counts");
    out["identification_report"] = rep;
    WriteAtomic(opts.output, dump_json(out));
  });
}

int cmd_decompose(const std::string& system_file, const std::string& input_file,
                  const Options& opts) {
  return Run("decompose", [&] {
    const Loaded ls = Load(system_file);
    const Loaded li = Load(input_file);
    const QlsSystem sys = LoadSystem(ls);
    const GaussianInput v = LoadInput(li);
    const GlobalMinimalityReport gm = global_minimality(sys, v);
    Json rep = Header("decompose", {{"system", ls}, {"input", li}}, opts);
    rep["stationary"] = {
        {"globally_minimal", Entry(gm.is_globally_minimal, "stationary.global_minimality")},
        {"pure_dim", Entry(gm.pure_dim, "stationary.global_minimality")},
        {"mixed_dim", Entry(gm.mixed_dim, "stationary.global_minimality")},
        {"thermal_numbers", Entry(gm.thermal_numbers, "stationary.stationary_covariance")}};
    rep["residuals"] = Json::array({
        {{"stage", "pure_c_plus"}, {"operation", "stationary.global_minimality"},
         {"value", gm.residual_c_plus_p}},
        {{"stage", "pure_omega_plus"}, {"operation", "stationary.global_minimality"},
         {"value", gm.residual_omega_plus_pp}},
        {{"stage", "series"}, {"operation", "system_model.series_product"},
         {"value", gm.residual_series}},
    });
    Json out;
    out["schema"] = kSchema;
    out["kind"] = "decomposition";
    out["report"] = rep;
    out["pure_part"] = gm.pure_part ? to_json(to_input_basis(*gm.pure_part, gm.S0)) : Json();
    out["mixed_part"] = gm.mixed_part ? to_json(to_input_basis(*gm.mixed_part, gm.S0)) : Json();
    RenderText(rep);
    WriteAtomic(opts.output, dump_json(out));
  });
}

int cmd_grid(const std::string& system_file, const std::optional<std::string>& input_file,
             const SweepOptions& sweep, const Options& opts) {
  return Run("grid", [&] {
    const QlsSystem sys = LoadSystem(Load(system_file));
    RequireSiso(sys);
    std::optional<GaussianInput> v;
    if (input_file) v = LoadInput(Load(*input_file));
    const std::vector<double> omegas = Sweep(sweep);
    std::ostringstream csv;
    csv << "omega,re_xi_minus,im_xi_minus,re_xi_plus,im_xi_plus";
    if (v) csv << ",re_psi11,im_psi11,re_psi12,im_psi12,re_psi22,im_psi22";
    csv << "\n";
    for (double w : omegas) {
      const CMatrix xi = eval_transfer(sys, -I * w);
      csv << Csv(w) << "," << Csv(xi(0, 0).real()) << "," << Csv(xi(0, 0).imag()) << ","
          << Csv(xi(0, 1).real()) << "," << Csv(xi(0, 1).imag());
      if (v) {
        const CMatrix psi = power_spectrum_eval(sys, *v, -I * w);
        for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
          csv << "," << Csv(psi(i, j).real()) << "," << Csv(psi(i, j).imag());
        }
      }
      csv << "\n";
    }
    WriteAtomic(opts.output, csv.str());
  });
}

}  // namespace qls::cli
