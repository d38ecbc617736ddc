// cubepack: command-line front end.
//
// Exit status: 0 success or pass, 1 audit failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "cubepack/additive_basis.hpp"
#include "cubepack/annealing.hpp"
#include "cubepack/audits.hpp"
#include "cubepack/cantor.hpp"
#include "cubepack/dimension.hpp"
#include "cubepack/error.hpp"
#include "cubepack/families.hpp"
#include "cubepack/io.hpp"
#include "cubepack/lift.hpp"
#include "cubepack/union_kernel.hpp"

using namespace cubepack;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::int64_t n = 2;
  int k = 10;
  std::optional<int> delta_exp;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 1000;
  int strips = 100;
  std::string margin = "quarter";
  std::string out;

  std::optional<std::int64_t> base;
  std::string alphabet;
  std::string schedule;
  std::string elements;
  double t = 0.5;
  std::vector<double> r;
  std::string packing;
  std::string family;
  std::string profile;
  std::string cover;
  int k_min = 8;
  int k_max = 14;
  int pieces = 1000;
  int anneal_pieces = 32;
  int slice_k_min = 14;
  int slice_k_max = 20;
  int samples = 0;
  int windows = 50;
  int seeds = 1;
  int witness_level = 2;
  std::optional<int> index;
};

std::vector<std::int64_t> int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    std::string w;
    while (words >> w) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoll(w, &used));
        if (used != w.size()) throw std::invalid_argument(w);
      } catch (const std::exception&) {
        throw UsageError("not an integer list: " + text);
      }
    }
  }
  return out;
}

std::uint64_t need_seed(const Flags& f) {
  if (!f.seed) throw UsageError("this command is stochastic and needs --seed");
  return *f.seed;
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(f.out, text);
  }
}

CantorDescription cantor_from(const Flags& f) {
  if (!f.base) throw UsageError("--base is required");
  if (f.alphabet.empty()) return basis_cantor(*f.base);
  return CantorDescription(*f.base, int_list(f.alphabet));
}

Generator generator_from(const Flags& f) {
  if (!f.schedule.empty()) return BlockedDescription(int_list(f.schedule));
  return cantor_from(f);
}

int dimension_of(const Flags& f) {
  if (f.n < 1 || f.n > kMaxDimension) throw UsageError("--n must be a dimension in [1, 4]");
  return static_cast<int>(f.n);
}

SizePacking packing_from(const Flags& f) {
  if (!f.packing.empty()) return parse_packing_spec(read_text_file(f.packing));
  const int n = dimension_of(f);
  if (f.family == "random") return random_packing(n, f.pieces, need_seed(f));
  if (f.family == "aligned") return aligned_packing(n);
  if (f.family == "concentric") return concentric_packing(n);
  if (f.family == "two-cluster") return two_cluster_packing(n, f.delta_exp.value_or(f.k));
  if (f.family == "lifted") {
    const LiftedSet lifted = lift(f.base || !f.schedule.empty() ? generator_from(f) : Generator(basis_cantor(1024)), n);
    const int samples = f.samples > 0 ? f.samples : (n == 2 ? 1 << 16 : 1 << 10);
    return lifted_packing(lifted, samples, f.witness_level);
  }
  throw UsageError("give --packing <file> or --family random|aligned|concentric|lifted|two-cluster");
}

MarginRule margin_of(const Flags& f) {
  if (f.margin == "quarter") return MarginRule::kQuarter;
  if (f.margin == "logk") return MarginRule::kLogK;
  throw UsageError("--margin must be quarter or logk");
}

std::string fixed(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Size cube packings: constructions, covers and dimension audits"};
  app.require_subcommand(1);
  Flags f;
  std::function<int()> action;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--out", f.out, "Write the result here instead of stdout");
  };
  auto add_k = [&](CLI::App* cmd) { cmd->add_option("--k", f.k, "Scale exponent (cell width 2^-k)"); };
  auto add_range = [&](CLI::App* cmd) {
    cmd->add_option("--k-min", f.k_min, "First scale exponent of the fit");
    cmd->add_option("--k-max", f.k_max, "Last scale exponent of the fit");
  };
  auto add_cantor = [&](CLI::App* cmd) {
    cmd->add_option("--base", f.base, "Digit base n");
    cmd->add_option("--alphabet", f.alphabet, "Allowed digits, comma separated (default: basis alphabet)");
  };
  auto add_packing = [&](CLI::App* cmd) {
    cmd->add_option("--packing", f.packing, "Packing document (JSON)");
    cmd->add_option("--family", f.family, "random|aligned|concentric|lifted|two-cluster");
    cmd->add_option("--n", f.n, "Ambient dimension for --family");
    cmd->add_option("--seed", f.seed, "Seed for random families");
    cmd->add_option("--pieces", f.pieces, "Pieces of the random family");
    cmd->add_option("--samples", f.samples, "Samples of the lifted family");
    cmd->add_option("--schedule", f.schedule, "Block schedule for a lifted family");
    cmd->add_option("--witness-level", f.witness_level, "Witness digits for the lifted family");
    add_cantor(cmd);
  };

  // basis
  auto* basis = app.add_subcommand("basis", "Additive bases of Z_n");
  basis->require_subcommand(1);
  auto* b_construct = basis->add_subcommand("construct", "Digit split basis");
  auto* b_minimal = basis->add_subcommand("minimal", "Exhaustive minimum basis (n <= 40)");
  auto* b_verify = basis->add_subcommand("verify", "Check B + B = Z_n");
  for (auto* cmd : {b_construct, b_minimal, b_verify}) {
    cmd->add_option("--n", f.n, "Modulus")->required();
    common(cmd);
  }
  b_verify->add_option("--elements", f.elements, "Elements, comma or space separated")->required();
  b_construct->callback([&] { action = [&] { emit(f, serialize_basis(construct_basis(f.n))); return kPass; }; });
  b_minimal->callback([&] { action = [&] { emit(f, serialize_basis(minimal_basis(f.n))); return kPass; }; });
  b_verify->callback([&] {
    action = [&] {
      const bool ok = verify_cover(int_list(f.elements), f.n);
      emit(f, ok ? "covers\n" : "does not cover\n");
      return ok ? kPass : kFail;
    };
  });

  // cantor
  auto* cantor = app.add_subcommand("cantor", "Digit-restricted Cantor sets");
  cantor->require_subcommand(1);
  auto* c_build = cantor->add_subcommand("build", "Describe a Cantor set");
  auto* c_cells = cantor->add_subcommand("cells", "Level-k cylinders");
  auto* c_diff = cantor->add_subcommand("diffcover", "Difference coverage at level k");
  auto* c_witness = cantor->add_subcommand("witness", "Witness pair x - y ~ t");
  for (auto* cmd : {c_build, c_cells, c_diff, c_witness}) {
    add_cantor(cmd);
    common(cmd);
  }
  for (auto* cmd : {c_cells, c_diff, c_witness}) add_k(cmd);
  c_witness->add_option("--t", f.t, "Target difference in (0,1)");
  c_build->callback([&] {
    action = [&] {
      const auto d = cantor_from(f);
      emit(f, serialize_generator(d) + "theoretical_dim " + fixed(d.theoretical_dim()) + "\n");
      return kPass;
    };
  });
  c_cells->callback([&] {
    action = [&] {
      std::string text;
      for (auto c : enumerate_cells(cantor_from(f), f.k)) text += std::to_string(c) + "\n";
      emit(f, text);
      return kPass;
    };
  });
  c_diff->callback([&] {
    action = [&] {
      const bool ok = difference_covers(cantor_from(f), f.k);
      emit(f, ok ? "true\n" : "false\n");
      return ok ? kPass : kFail;
    };
  });
  c_witness->callback([&] {
    action = [&] {
      const auto w = find_witnesses(cantor_from(f), f.t, f.k);
      emit(f, "x_digits " + join(w.x_digits) + "\ny_digits " + join(w.y_digits) + "\nx " + fixed(w.x) + "\ny " +
                  fixed(w.y) + "\nerror " + fixed(std::abs(w.x - w.y - f.t)) + "\n");
      return kPass;
    };
  });

  // lift
  auto* lift_cmd = app.add_subcommand("lift", "Lifted sets L(F)");
  lift_cmd->require_subcommand(1);
  auto* l_build = lift_cmd->add_subcommand("build", "Cell count of the lifted set at level k");
  auto* l_pack = lift_cmd->add_subcommand("pack", "Cube of side ~t inside the lifted set");
  for (auto* cmd : {l_build, l_pack}) {
    add_cantor(cmd);
    cmd->add_option("--schedule", f.schedule, "Block lengths for a block generator");
    cmd->add_option("--n", f.n, "Ambient dimension");
    add_k(cmd);
    common(cmd);
  }
  l_pack->add_option("--t", f.t, "Side length in (0,1)");
  l_build->callback([&] {
    action = [&] {
      const LiftedSet lifted = lift(generator_from(f), dimension_of(f));
      const auto m = generator_cells(lifted.generator, f.k).size();
      const auto boxes = lifted_boxes(lifted, f.k);
      const auto count = kernels::count_union(lifted.dimension, boxes);
      emit(f, "generator_cells " + std::to_string(m) + "\ncells " + std::to_string(count) + "\nformula " +
                  std::to_string(lifted_count_formula(lifted.dimension, m, f.k)) + "\n");
      return kPass;
    };
  });
  l_pack->callback([&] {
    action = [&] {
      const auto cube = packing_from_lift(lift(generator_from(f), dimension_of(f)), f.t, f.k);
      std::string center;
      for (double c : cube.center) center += (center.empty() ? "" : " ") + fixed(c);
      emit(f, "side " + fixed(cube.side) + "\ncenter " + center + "\nx " + fixed(cube.x) + "\ny " + fixed(cube.y) + "\n");
      return kPass;
    };
  });

  // count / dim / assouad
  auto* count = app.add_subcommand("count", "Cover cell count of a packing");
  add_packing(count);
  add_k(count);
  common(count);
  count->callback([&] {
    action = [&] {
      const auto p = packing_from(f);
      if (f.out.empty()) {
        std::cout << packing_cell_count(p, f.k) << "\n";
      } else {
        const auto cover = packing_cover(p, f.k);
        write_text_file(f.out, serialize_cover(cover));
        std::cout << cover.size() << "\n";
      }
      return kPass;
    };
  });

  auto* dim = app.add_subcommand("dim", "Box-dimension fit of a packing or a profile CSV");
  add_packing(dim);
  add_range(dim);
  dim->add_option("--profile", f.profile, "Profile CSV (k,count) to fit instead of a packing");
  common(dim);
  dim->callback([&] {
    action = [&] {
      std::optional<ScaleProfile> profile;
      if (!f.profile.empty()) {
        profile = parse_profile(read_text_file(f.profile));
      } else {
        const auto p = packing_from(f);
        profile = build_profile(f.k_min, f.k_max, [&](int k) { return packing_cell_count(p, k); });
      }
      if (!f.out.empty()) write_text_file(f.out, serialize_profile(*profile));
      std::cout << serialize_estimate(estimate_dimension(*profile));
      return kPass;
    };
  });

  auto* assouad = app.add_subcommand("assouad", "Assouad window estimate on a Cantor set");
  add_cantor(assouad);
  assouad->add_option("--windows", f.windows, "Number of seeded windows");
  assouad->add_option("--seed", f.seed, "Seed for the windows");
  common(assouad);
  assouad->callback([&] {
    action = [&] {
      const auto d = cantor_from(f);
      const auto result = assouad_profile(d, sample_cantor_windows(d, static_cast<std::size_t>(f.windows), need_seed(f)));
      emit(f, "{\"exponent\":" + fixed(result.exponent) + ",\"windows_used\":" + std::to_string(result.windows_used) +
                  ",\"skipped\":" + std::to_string(result.skipped) + ",\"theoretical_dim\":" +
                  fixed(d.theoretical_dim()) + "}\n");
      return kPass;
    };
  });

  // audit
  auto* audit = app.add_subcommand("audit", "Lower-bound audits");
  audit->require_subcommand(1);
  auto* a_t1 = audit->add_subcommand("t1", "Overlap dichotomy audit at each scale");
  add_packing(a_t1);
  add_range(a_t1);
  a_t1->add_option("--delta-exp", f.delta_exp, "Audit a single scale 2^-k");
  common(a_t1);
  a_t1->callback([&] {
    action = [&] {
      const auto p = packing_from(f);
      const int lo = f.delta_exp.value_or(f.k_min);
      const int hi = f.delta_exp.value_or(f.k_max);
      std::string text = audit_csv_header();
      bool ok = true;
      for (int k = lo; k <= hi; ++k) {
        const auto a = audit_lower_bound(p, k);
        ok = ok && a.pass;
        text += audit_csv_row(a);
      }
      emit(f, text);
      return ok ? kPass : kFail;
    };
  });
  auto* a_restricted = audit->add_subcommand("restricted", "Packing restricted to a Cantor parameter set");
  add_cantor(a_restricted);
  a_restricted->add_option("--n", f.n, "Ambient dimension");
  a_restricted->add_option("--seed", f.seed, "Seed for the centers");
  add_range(a_restricted);
  common(a_restricted);
  a_restricted->callback([&] {
    action = [&] {
      const auto rp = restricted_random(cantor_from(f), dimension_of(f), need_seed(f));
      const auto a = restricted_audit(rp, f.k_min, f.k_max);
      emit(f, "slope " + fixed(a.estimate.slope) + "\nbound " + fixed(a.bound) + "\nfloor " + fixed(a.floor) + "\n" +
                  (a.pass ? "pass\n" : "fail\n"));
      return a.pass ? kPass : kFail;
    };
  });

  // minimize
  auto* minimize = app.add_subcommand("minimize", "Anneal piece centers to shrink the cover");
  minimize->add_option("--n", f.n, "Ambient dimension");
  minimize->add_option("--delta-exp", f.delta_exp, "Scale exponent of the objective (default 8)");
  minimize->add_option("--budget", f.budget, "Annealing moves per seed");
  minimize->add_option("--seed", f.seed, "First seed");
  minimize->add_option("--seeds", f.seeds, "Number of consecutive seeds");
  minimize->add_option("--pieces", f.anneal_pieces, "Pieces of the annealed packing");
  common(minimize);
  minimize->callback([&] {
    action = [&] {
      const std::uint64_t first = need_seed(f);
      std::vector<std::uint64_t> seeds;
      for (int i = 0; i < f.seeds; ++i) seeds.push_back(first + static_cast<std::uint64_t>(i));
      const auto result = adversarial_minimize(dimension_of(f), f.delta_exp.value_or(8), f.budget, seeds, f.anneal_pieces);
      if (!f.out.empty()) write_text_file(f.out, serialize_packing(result.packing));
      std::cout << "seed " << result.seed << "\ninitial_count " << result.initial_count << "\nbest_count "
                << result.best_count << "\naccepted " << result.accepted << "\n";
      return kPass;
    };
  });

  // shrink
  auto* shrink = app.add_subcommand("shrink", "Cover of the family shrunk by ratio r");
  add_packing(shrink);
  add_k(shrink);
  shrink->add_option("--r", f.r, "Shrink ratio in (0,1]")->expected(1);
  common(shrink);
  shrink->callback([&] {
    action = [&] {
      if (f.r.size() != 1) throw UsageError("--r takes one ratio");
      const auto p = packing_from(f);
      if (f.out.empty()) {
        std::cout << shrink_count(p, f.r[0], f.k) << "\n";
      } else {
        const auto cover = shrink_cover(p, f.r[0], f.k);
        write_text_file(f.out, serialize_cover(cover));
        std::cout << cover.size() << "\n";
      }
      return kPass;
    };
  });

  // slice-sweep
  auto* sweep = app.add_subcommand("slice-sweep", "Dimension of strip slices F_r for many r");
  add_packing(sweep);
  sweep->add_option("--strips", f.strips, "Number of strips");
  sweep->add_option("--margin", f.margin, "quarter (t/4) or logk (t/ln strips)");
  sweep->add_option("--index", f.index, "Strip index (default: class of largest measure)");
  sweep->add_option("--r", f.r, "Ratios to slice at (default: --samples seeded uniform in (1/2,1))");
  sweep->add_option("--k-min", f.slice_k_min, "First scale of the slice fit");
  sweep->add_option("--k-max", f.slice_k_max, "Last scale of the slice fit");
  common(sweep);
  sweep->callback([&] {
    action = [&] {
      const auto p = packing_from(f);
      const auto classes = strip_classes(p, f.strips, margin_of(f));
      std::vector<double> rs = f.r;
      if (rs.empty()) {
        std::mt19937_64 rng(need_seed(f) ^ 0x5eedULL);
        std::uniform_real_distribution<double> unit(0.5, 1.0);
        rs.resize(static_cast<std::size_t>(f.samples > 0 ? f.samples : 100));
        for (double& r : rs) r = unit(rng);
      }
      emit(f, sweep_csv(dual_slice_dim(p, classes, f.index.value_or(classes.largest()), rs, f.slice_k_min, f.slice_k_max)));
      return kPass;
    };
  });

  // render
  auto* render = app.add_subcommand("render", "SVG of a plane cover");
  add_packing(render);
  add_k(render);
  render->add_option("--cover", f.cover, "Cover text file to render instead of a packing");
  common(render);
  render->callback([&] {
    action = [&] {
      const GridCover cover = f.cover.empty() ? packing_cover(packing_from(f), f.k) : parse_cover(read_text_file(f.cover));
      emit(f, render_svg(cover));
      return kPass;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
}
