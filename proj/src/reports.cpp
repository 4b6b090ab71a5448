#include "rohull/reports.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rohull/svg.hpp"

namespace rohull {

namespace {

Json header(const std::string& command, Mode mode) {
  return Json{{"schema", kSchema}, {"command", command}, {"mode", std::string(to_string(mode))}};
}

Report start(const std::string& command, Mode mode) {
  Report r;
  r.command = command;
  r.body = header(command, mode);
  return r;
}

void finish(Report& r, Json certificates) {
  r.pass = std::all_of(certificates.begin(), certificates.end(), [](const Json& v) { return v.get<bool>(); });
  r.body["certificates"] = std::move(certificates);
  r.body["pass"] = r.pass;
}

Mode exact_by_default(const RunOptions& opt) { return opt.mode.value_or(Mode::exact); }

void require_positive(int v, const char* name) {
  if (v < 1) throw UsageError(std::string("--") + name + " must be at least 1");
}

Scalar parse_flag(const std::string& text, Mode mode, const char* name) {
  try {
    return Scalar::parse(text, mode);
  } catch (const Error& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

Json load_input(const RunOptions& opt) {
  if (opt.input_data) return *opt.input_data;
  try {
    return parse_json_file(*opt.input);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

template <class F>
auto from_input(F&& f) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad input: ") + e.what());
  } catch (const Error& e) {
    throw UsageError(std::string("bad input: ") + e.what());
  }
}

DiagonalData diagonal_from_json(const Json& j, Mode mode) {
  DiagonalData d;
  d.x1 = scalar_from_json(j.at("x1"), mode);
  d.x2 = scalar_from_json(j.at("x2"), mode);
  d.y1 = scalar_from_json(j.at("y1"), mode);
  d.y2 = scalar_from_json(j.at("y2"), mode);
  const Json& a = j.at("alpha");
  if (!a.is_array() || a.size() != 4) throw UsageError("alpha must list four values");
  for (int i = 0; i < 4; ++i) d.alpha[i] = scalar_from_json(a[i], mode);
  d.validate();
  return d;
}

Json diagonal_json(const DiagonalData& d) {
  return Json{{"x1", to_json(d.x1)},        {"x2", to_json(d.x2)},       {"y1", to_json(d.y1)},
              {"y2", to_json(d.y2)},        {"alpha", to_json(d.alpha)}, {"corners", to_json(d.corners())},
              {"outer", to_json(d.outer())}};
}

bool negligible_det(const Mat2& diff, double tol) {
  Scalar d = det(diff);
  if (d.is_exact()) return d.is_zero();
  return std::abs(d.to_double()) <= tol * frobenius_sq(diff).to_double();
}

Scalar pow2_inverse(int n, Mode mode) {
  mpz_class den = 1;
  den <<= n;
  return Scalar::convert(Scalar(mpq_class(mpz_class(1), den)), mode);
}

}  // namespace

Report staircase_report(const RunOptions& opt) {
  const Mode mode = exact_by_default(opt);
  StaircaseConfig cfg{opt.n_max, opt.N, mode};
  if (cfg.N < 1 || cfg.N > cfg.n_max) throw UsageError("staircase needs 1 <= N <= n-max");

  Report r = start("staircase", mode);
  r.body["inputs"] = {{"N", cfg.N}, {"n_max", cfg.n_max}};
  LaminateSet k0 = staircase_points(cfg);
  StaircaseChain chain = staircase_iterate(cfg);
  LaminateSet perturbed = k0;
  perturbed.points.push_back(embed(chain.perturbation));
  const auto target = LaminateSet::from_points({embed(chain.final_point)});

  Json k0_pts = Json::array();
  for (const auto& p : k0.points) k0_pts.push_back(to_json(to_diag(p)));
  Json steps = Json::array();
  bool steps_rank_one = true;
  for (const auto& s : chain.steps) {
    steps.push_back({{"left", to_json(s.left)},
                     {"right", to_json(s.right)},
                     {"result", to_json(s.result)},
                     {"shared_axis", std::string(1, s.shared_axis)}});
    steps_rank_one = steps_rank_one && rank_one_connected(embed(s.left), embed(s.right), opt.tol);
  }
  Distance jump = hausdorff(perturbed, k0);
  Distance to_k0 = directed_hausdorff(target, k0);
  const Scalar bound = pow2_inverse(cfg.N, mode);
  const Scalar half = Scalar::convert(Scalar::ratio(1, 2), mode);

  r.body["K0"] = std::move(k0_pts);
  r.body["perturbation"] = to_json(chain.perturbation);
  r.body["chain"] = std::move(steps);
  r.body["final_point"] = to_json(chain.final_point);
  r.body["distances"] = {{"perturbation", to_json(jump)},
                         {"perturbation_bound", to_json(bound)},
                         {"target_to_K0", to_json(to_k0)}};
  const DiagPt goal{Scalar::of(mode, 0), Scalar::of(mode, 1)};
  finish(r, {{"chain_reaches_target", chain.final_point == goal},
             {"steps_rank_one", steps_rank_one},
             {"step_count", static_cast<int>(chain.steps.size()) == 2 * (cfg.N + 1)},
             {"perturbation_within_bound", jump.squared <= bound * bound},
             {"target_distance_is_half", to_k0.squared == half * half}});

  std::ostringstream csv;
  write_csv_header(csv);
  for (const auto& p : perturbed.points) write_csv_row(csv, Subspace::diagonal, p);
  for (const auto& s : chain.steps) write_csv_row(csv, Subspace::diagonal, embed(s.result));
  r.csv = csv.str();
  r.svg = staircase_svg(k0, chain);
  return r;
}

Report tri_spiral_report(const RunOptions& opt) {
  const Mode mode = exact_by_default(opt);
  require_positive(opt.steps, "steps");
  TriSpiralConfig cfg = TriSpiralConfig::standard(mode);
  if (opt.has_input()) {
    Json j = load_input(opt);
    cfg = from_input([&] {
      TriSpiralConfig c;
      c.diag = diagonal_from_json(j, mode);
      c.z0 = scalar_from_json(j.at("z0"), mode);
      if (c.z0.sign() <= 0) throw UsageError("z0 must be positive");
      return c;
    });
  }
  Report r = start("tri-spiral", mode);
  r.body["inputs"] = {{"diagonal", diagonal_json(cfg.diag)}, {"z0", to_json(cfg.z0)}, {"steps", opt.steps}};
  TriSpiralResult res = tri_spiral(cfg, opt.steps);

  const auto outer = cfg.diag.outer();
  bool dets_vanish = true, z_decreasing = true;
  for (int i = 0; i < opt.steps; ++i) {
    dets_vanish =
        dets_vanish &&
        negligible_det(embed(res.iterates[i]) - embed(TriPt{outer[i % 4].x, outer[i % 4].y, like(cfg.z0, 0)}),
                       opt.tol);
    z_decreasing = z_decreasing && res.iterates[i + 1].z < res.iterates[i].z;
  }
  r.body["lambda"] = to_json(res.lambda);
  r.body["iterates"] = to_json(res.iterates);
  r.body["certificates_det"] = to_json(res.certificates);
  r.body["separator"] = to_json(res.separator);
  finish(r, {{"rank_one_steps", dets_vanish},
             {"z_strictly_decreasing", z_decreasing},
             {"closed_form_matches", res.closed_form_matches},
             {"separator_passes", res.separator.pairwise_dets.size() == 6}});

  std::ostringstream csv;
  write_csv_header(csv);
  for (const auto& p : res.iterates) write_csv_row(csv, Subspace::upper_triangular, embed(p));
  r.csv = csv.str();
  r.svg = tri_spiral_svg(cfg, res);
  return r;
}

Report sym_spiral_report(const RunOptions& opt) {
  const Mode mode = opt.mode.value_or(Mode::floating);
  if (mode == Mode::exact)
    throw UsageError("sym-spiral needs --mode float: its starting offset involves an irrational square root");
  require_positive(opt.iters, "iters");
  const Scalar xi3 = parse_flag(opt.xi3, mode, "xi3");
  if (xi3.sign() <= 0) throw UsageError("--xi3 must be positive");
  SymSpiralConfig cfg = SymSpiralConfig::standard(xi3.to_double());
  if (opt.has_input()) {
    Json j = load_input(opt);
    cfg.diag = from_input([&] { return diagonal_from_json(j, mode); });
  }
  cfg.tol = 1e-10;

  Report r = start("sym-spiral", mode);
  r.body["inputs"] = {{"diagonal", diagonal_json(cfg.diag)}, {"xi3", to_json(cfg.xi3)}, {"iters", opt.iters}};
  SymSpiralResult res;
  try {
    res = sym_spiral(cfg, opt.iters);
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    r.body["error"] = e.what();
    finish(r, {{"spiral_completed", false}});
    return r;
  }
  Json cycles = Json::array();
  bool dets_ok = true, contraction = true, branch = true;
  for (const auto& c : res.cycles) {
    Json quarters = Json::array();
    for (const auto& q : c.quarters) {
      bool ok = std::abs(q.det_residual.to_double()) <= 1e-10 * q.det_scale.to_double();
      dets_ok = dets_ok && ok;
      quarters.push_back({{"t", to_json(q.t)},
                          {"point", to_json(q.point)},
                          {"det", to_json(q.det_residual)},
                          {"scale", to_json(q.det_scale)}});
    }
    contraction = contraction && c.ratio < c.bound;
    branch = branch && c.positive_branch;
    cycles.push_back({{"start", to_json(c.start)},
                      {"quarters", std::move(quarters)},
                      {"eta", to_json(c.eta)},
                      {"ratio", to_json(c.ratio)},
                      {"bound", to_json(c.bound)},
                      {"branch_plus", to_json(c.branch_plus)},
                      {"branch_minus", to_json(c.branch_minus)},
                      {"positive_branch", c.positive_branch}});
  }
  const SymPt p0{cfg.diag.corners()[0].x, cfg.diag.corners()[0].y, like(xi3, 0)};
  const Scalar gap = sqrt(frobenius_sq(embed(res.iterates.back()) - embed(p0)));
  r.body["xi"] = to_json(std::array<Scalar, 3>{res.xi1, res.xi2, res.xi3});
  r.body["lambda"] = to_json(res.lambda);
  r.body["cycles"] = std::move(cycles);
  r.body["iterates"] = to_json(res.iterates);
  r.body["final_distance_to_P0"] = to_json(gap);
  finish(r, {{"spiral_completed", true},
             {"quarter_steps_rank_one", dets_ok},
             {"contraction", contraction},
             {"positive_branch", branch}});

  std::ostringstream csv;
  write_csv_header(csv);
  for (const auto& p : res.iterates) write_csv_row(csv, Subspace::symmetric, embed(p));
  r.csv = csv.str();
  return r;
}

Report five_point_report(const RunOptions& opt) {
  const Mode mode = exact_by_default(opt);
  const Scalar eps = parse_flag(opt.epsilon, mode, "epsilon");
  if (eps.sign() <= 0 || eps >= like(eps, 1)) throw UsageError("--epsilon must lie strictly between 0 and 1");
  if (opt.rounds < 0) throw UsageError("--rounds must be nonnegative");

  Report r = start("five-point", mode);
  r.body["inputs"] = {{"epsilon", to_json(eps)}, {"rounds", opt.rounds}};
  FivePointConfig cfg = five_point_build(eps);
  const std::vector<Mat2> xs(cfg.X.begin(), cfg.X.end());
  const T4Witness w = cfg.witness();
  const DiscreteLaminate lam = laminate_unroll(xs, w, 0, opt.rounds);
  const Distance gap = five_point_gap(cfg);

  Scalar expected_mass = like(eps, 1);
  for (const auto& m : cfg.mu)
    for (int i = 0; i < opt.rounds; ++i) expected_mass *= like(eps, 1) - like(eps, 1) / m;

  r.body["X"] = to_json(cfg.X);
  r.body["mu"] = to_json(cfg.mu);
  r.body["P"] = to_json(cfg.P);
  r.body["C"] = to_json(cfg.C);
  r.body["mu_consistency"] = to_json(cfg.checks.mu_consistency);
  r.body["residuals"] = to_json(cfg.checks.t4);
  r.body["det_X"] = to_json(cfg.checks.det_X);
  r.body["pairwise_det_X"] = to_json(cfg.checks.pairwise_det);
  r.body["gap"] = to_json(gap);
  r.body["laminate"] = to_json(lam);
  r.body["expected_off_support_mass"] = to_json(expected_mass);

  const bool exact = mode == Mode::exact;
  auto vanishes = [&](const Scalar& s) { return exact ? s.is_zero() : std::abs(s.to_double()) <= 1e-9; };
  bool bary = exact ? lam.barycenter == cfg.P[0] : max_abs(lam.barycenter - cfg.P[0]).to_double() <= 1e-9;
  bool mass = exact ? lam.off_support_mass == expected_mass
                    : std::abs((lam.off_support_mass - expected_mass).to_double()) <= 1e-12;
  finish(r, {{"mu_consistency", vanishes(cfg.checks.mu_consistency)},
             {"t4_equations", cfg.checks.t4.accepted},
             {"increments_rank_one", cfg.checks.increments_rank_one},
             {"lamination_convex_union", cfg.checks.lamination_convex},
             {"gap_positive", gap.squared.sign() > 0},
             {"barycenter_is_corner", bary},
             {"off_support_mass", mass}});
  return r;
}

namespace {

std::vector<Mat2> diagonal_classic(Mode mode) {
  auto d = DiagonalData::standard(mode).outer();
  return {embed(d[0]), embed(d[1]), embed(d[2]), embed(d[3])};
}

bool all_diagonal(std::span<const Mat2> x) {
  return std::all_of(x.begin(), x.end(), [](const Mat2& m) { return m.a12.is_zero() && m.a21.is_zero(); });
}

}  // namespace

Report t4_detect_report(const RunOptions& opt) {
  const Mode mode = exact_by_default(opt);
  std::vector<Mat2> x = diagonal_classic(mode);
  if (opt.has_input()) {
    Json j = load_input(opt);
    x = from_input([&] { return matrices_from_json(j, mode); });
  }
  if (x.size() != 4) throw UsageError("t4-detect needs exactly four matrices");

  Report r = start("t4-detect", mode);
  r.body["inputs"] = {{"points", to_json(x)}};
  T4Detection det = detect_t4(x, 1e-10);
  Json witnesses = Json::array();
  bool all_valid = true;
  for (const auto& w : det.witnesses) {
    T4Residuals res = check_t4_witness(x, w);
    all_valid = all_valid && res.accepted;
    witnesses.push_back(to_json(w, res));
  }
  Json failures = Json::array();
  for (const auto& f : det.failures) failures.push_back({{"ordering", f.ordering}, {"reason", f.reason}});
  r.body["found"] = det.witnesses.size();
  r.body["witnesses"] = std::move(witnesses);
  r.body["failures"] = std::move(failures);
  finish(r, {{"witnesses_validated", all_valid}});
  if (!det.witnesses.empty() && all_diagonal(x)) r.svg = t4_cross_svg(x, det.witnesses.front());
  return r;
}

namespace {

// Sample grid over the bounding box of a plane hull's polygon, in plane
// coordinates, mapped back to matrices.
std::vector<Mat2> plane_grid(const PlaneHull& h, int n) {
  auto lo = h.polygon_coords.front(), hi = lo;
  for (const auto& c : h.polygon_coords)
    for (int k = 0; k < 2; ++k) {
      lo[k] = min(lo[k], c[k]);
      hi[k] = max(hi[k], c[k]);
    }
  std::vector<Mat2> out;
  const Mode mode = lo[0].mode();
  // The box widened by a tenth on each side, so outside points are probed too.
  auto param = [&](int i) {
    return Scalar::convert(Scalar::ratio(-1, 10) + Scalar::ratio(12 * i, 10 * (n - 1)), mode);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar s = param(i), t = param(j);
      out.push_back(h.plane.point({lo[0] + s * (hi[0] - lo[0]), lo[1] + t * (hi[1] - lo[1])}).to_mat2());
    }
  return out;
}

}  // namespace

Report pc_hull_report(const RunOptions& opt) {
  const Mode mode = exact_by_default(opt);
  const Scalar zero = Scalar::of(mode, 0), one = Scalar::of(mode, 1);
  std::vector<Mat2> k{Mat2::zero(mode), Mat2{one, zero, zero, zero}, Mat2{zero, one, zero, zero}};
  if (opt.has_input()) {
    Json j = load_input(opt);
    k = from_input([&] { return matrices_from_json(j, mode); });
  }
  if (k.empty()) throw UsageError("pc-hull needs at least one matrix");
  require_positive(opt.samples, "samples");

  Report r = start("pc-hull", mode);
  r.body["inputs"] = {{"points", to_json(k)}, {"samples", opt.samples}};
  DetCheckReport check = pairwise_det_check(k, opt.tol);
  Json pairs = Json::array();
  for (std::size_t i = 0; i < check.pairs.size(); ++i)
    pairs.push_back(
        {{"i", check.pairs[i].first}, {"j", check.pairs[i].second}, {"det", to_json(check.dets[i])}});
  Json rank_one = Json::array();
  for (auto [i, j] : check.rank_one_pairs) rank_one.push_back({i, j});
  r.body["det_check"] = {
      {"pass", check.pass}, {"pairs", std::move(pairs)}, {"rank_one_pairs", std::move(rank_one)}};
  if (!check.pass) {
    r.body["det_check"]["violating_pair"] = {check.violating_pair->first, check.violating_pair->second};
    finish(r, {{"det_sign_condition", false}});
    return r;
  }
  PcHull hull = pc_hull(k, opt.tol);
  r.body["hull"] = to_json(hull);

  // Cross-check against direct second-lamination membership.
  int tested = 0, disagreements = 0;
  std::vector<Mat2> probes(k.begin(), k.end());
  for (const auto& p : hull.planes) {
    auto grid = plane_grid(p, std::max(3, opt.samples));
    probes.insert(probes.end(), grid.begin(), grid.end());
  }
  Json mismatches = Json::array();
  const LaminateSet l1 = l1_hull(k, opt.tol);
  for (const auto& x : probes) {
    ++tested;
    bool a = hull.contains(x), b = step_contains(l1, x, opt.tol);
    if (a != b) {
      ++disagreements;
      if (mismatches.size() < 10) mismatches.push_back({{"matrix", to_json(x)}, {"pc_hull", a}, {"l2", b}});
    }
  }
  r.body["cross_check"] = {{"tested", tested}, {"disagreements", disagreements}, {"examples", mismatches}};
  finish(r, {{"det_sign_condition", true}, {"pc_hull_matches_l2", disagreements == 0}});
  return r;
}

Report hausdorff_report(const RunOptions& opt) {
  const Mode mode = exact_by_default(opt);
  LaminateSet a, b;
  if (opt.has_input()) {
    Json j = load_input(opt);
    from_input([&] {
      a = laminate_set_from_json(j.at("a"), mode);
      b = laminate_set_from_json(j.at("b"), mode);
      return 0;
    });
  } else {
    a = LaminateSet::from_points({embed(staircase_corner(-1, mode))});
    b = staircase_points({opt.n_max, 1, mode});
  }
  if (a.empty() || b.empty()) throw UsageError("Hausdorff undefined for empty set");

  Report r = start("hausdorff", mode);
  r.body["inputs"] = {{"a", to_json(a)}, {"b", to_json(b)}};
  Distance ab = directed_hausdorff(a, b), ba = directed_hausdorff(b, a), h = hausdorff(a, b);
  r.body["directed_a_to_b"] = to_json(ab);
  r.body["directed_b_to_a"] = to_json(ba);
  r.body["hausdorff"] = to_json(h);
  finish(r, {{"symmetric_is_max", h.squared == max(ab.squared, ba.squared)}});
  return r;
}

Report usc_probe_report(const RunOptions& opt) {
  const Mode mode = exact_by_default(opt);
  if (opt.N < 1 || opt.N > opt.n_max) throw UsageError("usc-probe needs 1 <= N <= n-max");
  Report r = start("usc-probe", mode);
  r.body["inputs"] = {{"N", opt.N}, {"n_max", opt.n_max}};

  const LaminateSet k0 = staircase_points({opt.n_max, 1, mode});
  const bool k0_convex = lamination_step(k0, opt.tol).segments.empty();
  const Scalar quarter = Scalar::convert(Scalar::ratio(1, 4), mode);
  Json sweep = Json::array();
  bool within = true, jump = true;
  for (int n = 1; n <= opt.N; ++n) {
    StaircaseChain chain = staircase_iterate({opt.n_max, n, mode});
    LaminateSet k = k0;
    k.points.push_back(embed(chain.perturbation));
    LaminateSet hull_approx = k;
    for (const auto& s : chain.steps) hull_approx.points.push_back(embed(s.result));
    Distance rho = hausdorff(k, k0);
    Distance hull_rho = hausdorff(hull_approx, k0);
    const Scalar bound = pow2_inverse(n, mode);
    within = within && rho.squared <= bound * bound;
    jump = jump && hull_rho.squared >= quarter;
    sweep.push_back({{"N", n},
                     {"rho_K_K0", to_json(rho)},
                     {"bound", to_json(bound)},
                     {"rho_hull_K0", to_json(hull_rho)}});
  }
  r.body["sweep"] = std::move(sweep);
  finish(r, {{"K0_lamination_convex", k0_convex},
             {"perturbation_within_bound", within},
             {"hull_distance_at_least_half", jump}});
  return r;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"staircase", "tri-spiral", "sym-spiral", "five-point",
                                              "t4-detect", "pc-hull",    "hausdorff",  "usc-probe"};
  return names;
}

Report make_report(const std::string& command, const RunOptions& opt) {
  if (opt.mode == Mode::floating && !(opt.tol > 0)) throw UsageError("--tol must be positive in float mode");
  if (command == "staircase") return staircase_report(opt);
  if (command == "tri-spiral") return tri_spiral_report(opt);
  if (command == "sym-spiral") return sym_spiral_report(opt);
  if (command == "five-point") return five_point_report(opt);
  if (command == "t4-detect") return t4_detect_report(opt);
  if (command == "pc-hull") return pc_hull_report(opt);
  if (command == "hausdorff") return hausdorff_report(opt);
  if (command == "usc-probe") return usc_probe_report(opt);
  throw UsageError("unknown command: " + command);
}

}  // namespace rohull
