// Command-line front end. run() is the whole program; the binary in
// tools/ just forwards argv. Exit codes: 0 success, 1 validation error,
// 2 numeric/precondition error.
#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egt/io.hpp"

namespace egt::cli {

namespace detail {

inline VectorX<double> parse_vector(const std::string& csv,
                                    const std::string& field) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw DomainError(field + ": not a number: \"" + token + "\"");
    }
  }
  if (values.empty()) throw DomainError(field + ": empty vector");
  return Eigen::Map<const VectorX<double>>(values.data(),
                                           static_cast<Index>(values.size()));
}

inline SimplexPoint<double> simplex_from_csv(const std::string& csv,
                                             const std::string& field,
                                             const Tolerances<double>& tol) {
  try {
    return SimplexPoint<double>::checked(parse_vector(csv, field), tol);
  } catch (const DomainError& e) {
    throw DomainError(field + ": " + e.what());
  }
}

inline json vector_json(const VectorX<double>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline void emit(std::ostream& os, const json& doc) {
  os << doc.dump() << "\n";
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError(path + ": cannot open for writing");
  out << text;
}

// ---------------------------------------------------------------------------
// decompose

inline json decompose_symmetric_json(const MatrixGame<double>& g) {
  const auto d = decompose_symmetric(g);
  json doc;
  doc["kind"] = "symmetric";
  doc["components"] = {{"anti_zero_sum", matrix_to_json(d.anti_zero_sum)},
                       {"kernel", matrix_to_json(d.kernel)},
                       {"anti_potential", matrix_to_json(d.anti_potential)}};
  doc["norms"] = {{"anti_zero_sum", d.anti_zero_sum.norm()},
                  {"kernel", d.kernel.norm()},
                  {"anti_potential", d.anti_potential.norm()}};
  doc["orthogonality"] = {
      {"anti_zero_sum_kernel", inner_product(d.anti_zero_sum, d.kernel)},
      {"anti_zero_sum_anti_potential",
       inner_product(d.anti_zero_sum, d.anti_potential)},
      {"kernel_anti_potential", inner_product(d.kernel, d.anti_potential)}};
  doc["reconstruction_residual"] = d.residual;
  return doc;
}

inline json bimatrix_component_json(const BimatrixGame<double>& g) {
  return {{"A", matrix_to_json(g.a)}, {"B", matrix_to_json(g.b)}};
}

inline json decompose_bimatrix_json(const BimatrixGame<double>& g) {
  const auto d = decompose_bimatrix(g);
  const auto norm = [](const BimatrixGame<double>& c) {
    return std::hypot(c.a.norm(), c.b.norm());
  };
  json doc;
  doc["kind"] = "bimatrix";
  doc["components"] = {{"anti_zero_sum", bimatrix_component_json(d.anti_zero_sum)},
                       {"kernel", bimatrix_component_json(d.kernel)},
                       {"anti_potential", bimatrix_component_json(d.anti_potential)}};
  doc["norms"] = {{"anti_zero_sum", norm(d.anti_zero_sum)},
                  {"kernel", norm(d.kernel)},
                  {"anti_potential", norm(d.anti_potential)}};
  doc["orthogonality"] = {
      {"anti_zero_sum_kernel",
       bimatrix_inner_product(d.anti_zero_sum, d.kernel)},
      {"anti_zero_sum_anti_potential",
       bimatrix_inner_product(d.anti_zero_sum, d.anti_potential)},
      {"kernel_anti_potential",
       bimatrix_inner_product(d.kernel, d.anti_potential)}};
  doc["reconstruction_residual"] = d.residual;
  return doc;
}

inline json decompose_tensor_json(const TensorGame<double>& g) {
  const auto d = decompose_tensor(g);
  json doc;
  doc["kind"] = "nplayer";
  doc["components"] = {{"potential", tensor_to_json(d.potential)},
                       {"anti_potential", tensor_to_json(d.anti_potential)},
                       {"zero_sum", tensor_to_json(d.zero_sum)},
                       {"anti_zero_sum", tensor_to_json(d.anti_zero_sum)}};
  doc["norms"] = {{"potential", d.potential.norm()},
                  {"anti_potential", d.anti_potential.norm()},
                  {"zero_sum", d.zero_sum.norm()},
                  {"anti_zero_sum", d.anti_zero_sum.norm()}};
  doc["orthogonality"] = {
      {"potential_anti_potential",
       tensor_inner_product(d.potential, d.anti_potential)},
      {"zero_sum_anti_zero_sum",
       tensor_inner_product(d.zero_sum, d.anti_zero_sum)}};
  doc["reconstruction_residual"] =
      std::max((g.vectorized() - d.potential.vectorized() -
                d.anti_potential.vectorized())
                   .norm(),
               (g.vectorized() - d.zero_sum.vectorized() -
                d.anti_zero_sum.vectorized())
                   .norm());
  return doc;
}

inline void print_pretty_matrix(std::ostream& os, const std::string& name,
                                const MatrixX<double>& m) {
  const Eigen::IOFormat fmt(6, 0, "  ", "\n", "  [", "]");
  os << name << ":\n" << m.format(fmt) << "\n";
}

inline void decompose_pretty(std::ostream& os, const json& doc) {
  os << "kind: " << doc["kind"].get<std::string>() << "\n";
  for (const auto& [name, value] : doc["components"].items()) {
    if (value.is_array()) {
      print_pretty_matrix(os, name, matrix_from_json(value, name));
    } else if (value.is_object() && value.contains("A")) {
      print_pretty_matrix(os, name + ".A", matrix_from_json(value["A"], name));
      print_pretty_matrix(os, name + ".B", matrix_from_json(value["B"], name));
    } else {
      os << name << ": " << value.dump() << "\n";
    }
  }
  os << "norms: " << doc["norms"].dump() << "\n";
  os << "orthogonality: " << doc["orthogonality"].dump() << "\n";
  os << "reconstruction_residual: "
     << doc["reconstruction_residual"].dump() << "\n";
}

}  // namespace detail

/// Parse and execute one invocation. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"orthogonal decomposition and replicator dynamics of finite games"};
  app.require_subcommand(1);

  // decompose
  std::vector<std::string> decompose_files;
  bool flag_json = false, flag_pretty = false;
  auto* cmd_decompose =
      app.add_subcommand("decompose", "split games into orthogonal components");
  cmd_decompose->add_option("files", decompose_files, "game files")
      ->required()
      ->expected(-1);
  cmd_decompose->add_flag("--json", flag_json, "machine output (default)");
  cmd_decompose->add_flag("--pretty", flag_pretty, "aligned matrices");

  // classify
  std::vector<std::string> classify_files;
  double classify_tol = 1e-9;
  auto* cmd_classify =
      app.add_subcommand("classify", "potential/zero-sum/stability report");
  cmd_classify->add_option("files", classify_files, "game files")
      ->required()
      ->expected(-1);
  cmd_classify->add_option("--tol", classify_tol, "criterion tolerance");

  // simulate
  std::string sim_file, sim_x0, sim_y0, sim_out;
  double sim_t_end = 0, sim_step = 0.01;
  bool sim_track_h = false;
  auto* cmd_simulate =
      app.add_subcommand("simulate", "integrate the replicator dynamics");
  cmd_simulate->add_option("file", sim_file, "game file")->required();
  cmd_simulate->add_option("--x0", sim_x0, "start point v1,v2,...")->required();
  cmd_simulate->add_option("--y0", sim_y0, "column-population start (bimatrix)");
  cmd_simulate->add_option("--t-end", sim_t_end, "end time")->required();
  cmd_simulate->add_option("--step", sim_step, "RK4 step size")
      ->capture_default_str();
  cmd_simulate->add_option("--out", sim_out, "CSV output path (default stdout)");
  cmd_simulate->add_flag("--track-H", sim_track_h, "record H = sum log x_i");

  // field
  std::string field_file, field_x, field_y;
  auto* cmd_field =
      app.add_subcommand("field", "replicator field and its three-part split");
  cmd_field->add_option("file", field_file, "game file")->required();
  cmd_field->add_option("--x", field_x, "evaluation point v1,v2,...")->required();
  cmd_field->add_option("--y", field_y, "column-population point (bimatrix)");

  // zeeman
  auto* cmd_zeeman = app.add_subcommand("zeeman", "construct Zeeman games");
  cmd_zeeman->require_subcommand(1);
  double z_alpha = 0, z_beta = 0, z_gamma = 0, z_eta = 0, z_theta = 0;
  std::string zeeman_out;
  auto* cmd_gen3 = cmd_zeeman->add_subcommand("gen3", "three-strategy game");
  cmd_gen3->add_option("--alpha", z_alpha)->required();
  cmd_gen3->add_option("--beta", z_beta)->required();
  cmd_gen3->add_option("--eta", z_eta)->required();
  cmd_gen3->add_option("--theta", z_theta, "eigenvector rotation")
      ->capture_default_str();
  cmd_gen3->add_option("--out", zeeman_out, "also write the game file here");
  auto* cmd_gen4 = cmd_zeeman->add_subcommand("gen4", "four-strategy game");
  cmd_gen4->add_option("--alpha", z_alpha)->required();
  cmd_gen4->add_option("--beta", z_beta)->required();
  cmd_gen4->add_option("--gamma", z_gamma)->required();
  cmd_gen4->add_option("--eta", z_eta)->required();
  cmd_gen4->add_option("--out", zeeman_out, "also write the game file here");

  // basis
  std::string basis_kind;
  Index basis_l = 0, basis_lr = 0, basis_lc = 0, basis_i = 0, basis_j = 0;
  auto* cmd_basis = app.add_subcommand("basis", "print a basis matrix");
  cmd_basis->add_option("kind", basis_kind, "one of K, N, Ek, Eg, Ee")->required();
  cmd_basis->add_option("--l", basis_l, "strategy count (square)");
  cmd_basis->add_option("--lr", basis_lr, "row strategy count");
  cmd_basis->add_option("--lc", basis_lc, "column strategy count");
  cmd_basis->add_option("--i", basis_i, "row index (1-based)");
  cmd_basis->add_option("--j", basis_j, "column index (1-based)");

  // dims
  Index dims_l = 0, dims_lr = 0, dims_lc = 0, dims_n = 0;
  auto* cmd_dims = app.add_subcommand("dims", "subspace dimension report");
  cmd_dims->add_option("--l", dims_l, "strategy count");
  cmd_dims->add_option("--lr", dims_lr, "row strategy count");
  cmd_dims->add_option("--lc", dims_lc, "column strategy count");
  cmd_dims->add_option("--n", dims_n, "player count (n-player report)");

  // digraph
  std::string digraph_file, digraph_out;
  auto* cmd_digraph =
      app.add_subcommand("digraph", "sign-pattern digraph as DOT text");
  cmd_digraph->add_option("file", digraph_file, "game file")->required();
  cmd_digraph->add_option("--out", digraph_out, "DOT output path");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    Tolerances<double> tol;

    if (cmd_decompose->parsed()) {
      if (flag_json && flag_pretty) {
        throw DomainError("--json and --pretty are mutually exclusive");
      }
      for (const auto& path : decompose_files) {
        const GameFile file = load_game_file(path);
        json doc;
        if (const auto* g = std::get_if<MatrixGame<double>>(&file.game)) {
          doc = detail::decompose_symmetric_json(*g);
        } else if (const auto* g = std::get_if<BimatrixGame<double>>(&file.game)) {
          doc = detail::decompose_bimatrix_json(*g);
        } else {
          doc = detail::decompose_tensor_json(std::get<TensorGame<double>>(file.game));
        }
        if (decompose_files.size() > 1) {
          json named;
          named["file"] = path;
          named.update(doc);
          doc = std::move(named);
        }
        if (flag_pretty) {
          detail::decompose_pretty(out, doc);
        } else {
          detail::emit(out, doc);
        }
      }
      return 0;
    }

    if (cmd_classify->parsed()) {
      tol.classify = classify_tol;
      tol.ensure_valid();
      for (const auto& path : classify_files) {
        const GameFile file = load_game_file(path);
        json doc;
        if (const auto* g = std::get_if<MatrixGame<double>>(&file.game)) {
          doc = stability_json(stability_report(*g, tol));
        } else if (const auto* g = std::get_if<BimatrixGame<double>>(&file.game)) {
          doc = stability_json(bimatrix_stability(*g, tol));
        } else {
          throw DomainError(path + ": classify supports symmetric and bimatrix games only");
        }
        if (classify_files.size() > 1) {
          json named;
          named["file"] = path;
          named.update(doc);
          doc = std::move(named);
        }
        detail::emit(out, doc);
      }
      return 0;
    }

    if (cmd_simulate->parsed()) {
      const GameFile file = load_game_file(sim_file);
      Trajectory<double> traj;
      if (const auto* g = std::get_if<MatrixGame<double>>(&file.game)) {
        const auto x0 = detail::simplex_from_csv(sim_x0, "x0", tol);
        traj = integrate(*g, x0, sim_t_end, sim_step, sim_track_h, tol);
      } else if (const auto* g = std::get_if<BimatrixGame<double>>(&file.game)) {
        if (sim_y0.empty()) {
          throw DomainError("y0: required for bimatrix games");
        }
        const auto x0 = detail::simplex_from_csv(sim_x0, "x0", tol);
        const auto y0 = detail::simplex_from_csv(sim_y0, "y0", tol);
        traj = integrate_bimatrix(*g, x0, y0, sim_t_end, sim_step, sim_track_h, tol);
      } else {
        throw DomainError(sim_file + ": simulate supports symmetric and bimatrix games only");
      }
      if (sim_out.empty()) {
        write_trajectory_csv(out, traj);
      } else {
        std::ostringstream buffer;
        write_trajectory_csv(buffer, traj);
        detail::write_text_file(sim_out, buffer.str());
      }
      return 0;
    }

    if (cmd_field->parsed()) {
      const GameFile file = load_game_file(field_file);
      json doc;
      if (const auto* g = std::get_if<MatrixGame<double>>(&file.game)) {
        const auto x = detail::simplex_from_csv(field_x, "x", tol);
        const auto split = field_split(*g, x, tol);
        doc["field"] = detail::vector_json(replicator_field(*g, x));
        doc["split"] = {
            {"potential_part", detail::vector_json(split.potential_part)},
            {"monotonic_part", detail::vector_json(split.monotonic_part)},
            {"conservative_part", detail::vector_json(split.conservative_part)}};
      } else if (const auto* g = std::get_if<BimatrixGame<double>>(&file.game)) {
        if (field_y.empty()) throw DomainError("y: required for bimatrix games");
        const auto x = detail::simplex_from_csv(field_x, "x", tol);
        const auto y = detail::simplex_from_csv(field_y, "y", tol);
        const auto [fx, fy] = replicator_field_bimatrix(*g, x, y);
        doc["field_x"] = detail::vector_json(fx);
        doc["field_y"] = detail::vector_json(fy);
      } else {
        throw DomainError(field_file + ": field supports symmetric and bimatrix games only");
      }
      detail::emit(out, doc);
      return 0;
    }

    if (cmd_zeeman->parsed()) {
      GameFile file;
      ZeemanReport<double> report;
      if (cmd_gen3->parsed()) {
        const Zeeman3Params<double> p{z_alpha, z_beta, z_eta, z_theta};
        file.game = zeeman3(p);
        report = zeeman3_classify(p, tol);
      } else {
        const Zeeman4Params<double> p{z_alpha, z_beta, z_gamma, z_eta};
        file.game = zeeman4(p);
        report = zeeman4_classify(p, tol);
      }
      json doc;
      doc["game"] = game_to_json(file);
      doc["report"] = zeeman_json(report);
      detail::emit(out, doc);
      if (!zeeman_out.empty()) {
        detail::write_text_file(zeeman_out, game_to_json(file).dump() + "\n");
      }
      return 0;
    }

    if (cmd_basis->parsed()) {
      Index lr = basis_lr > 0 ? basis_lr : basis_l;
      Index lc = basis_lc > 0 ? basis_lc : basis_l;
      if (lr <= 0 || lc <= 0) {
        throw DomainError("l: provide --l or both --lr and --lc");
      }
      BasisKind kind;
      if (basis_kind == "K") kind = BasisKind::K;
      else if (basis_kind == "N") kind = BasisKind::N;
      else if (basis_kind == "Ek") kind = BasisKind::EKappa;
      else if (basis_kind == "Eg") kind = BasisKind::EGamma;
      else if (basis_kind == "Ee") kind = BasisKind::EEta;
      else throw DomainError("kind: must be one of K, N, Ek, Eg, Ee");
      detail::emit(out, matrix_to_json(basis_matrix<double>(kind, lr, lc,
                                                            basis_i, basis_j)));
      return 0;
    }

    if (cmd_dims->parsed()) {
      json doc;
      if (dims_n > 0) {
        if (dims_l <= 0) throw DomainError("l: required with --n");
        doc["players"] = dims_n;
        doc["strategies"] = dims_l;
        const long long total =
            dims_n * egt::detail::checked_power(dims_l, dims_n);
        doc["total"] = total;
        doc["dim_potential"] = potential_dims(dims_n, dims_l);
        doc["dim_anti_potential"] = anti_potential_dims(dims_n, dims_l);
        doc["dim_anti_zero_sum"] = anti_zero_sum_dims(dims_n, dims_l);
        doc["dim_zero_sum"] = total - anti_zero_sum_dims(dims_n, dims_l);
      } else if (dims_lr > 0 || dims_lc > 0) {
        if (dims_lr <= 0 || dims_lc <= 0) {
          throw DomainError("lr/lc: both required for the bimatrix report");
        }
        doc = dimensions_json(bimatrix_dimensions(dims_lr, dims_lc));
      } else {
        if (dims_l <= 0) throw DomainError("l: required");
        doc = dimensions_json(dimensions(dims_l));
      }
      detail::emit(out, doc);
      return 0;
    }

    if (cmd_digraph->parsed()) {
      const GameFile file = load_game_file(digraph_file);
      const auto* g = std::get_if<MatrixGame<double>>(&file.game);
      if (g == nullptr) {
        throw DomainError(digraph_file + ": digraph requires a symmetric game");
      }
      const std::string dot = to_dot(preference_digraph(*g, tol));
      if (digraph_out.empty()) {
        out << dot;
      } else {
        detail::write_text_file(digraph_out, dot);
      }
      return 0;
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace egt::cli
