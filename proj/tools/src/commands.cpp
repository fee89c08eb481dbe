#include "wavedg_cli/commands.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "wavedg/dg1d.hpp"
#include "wavedg/dg2d.hpp"

namespace wavedg::cli {

namespace {

const std::set<std::string> kProblemKeys = {
    "dim",    "scheme", "qu",      "qv",      "flux.alpha", "flux.beta", "flux.tau",
    "flux.boundary_upwind",        "c",       "speed",      "cfl",       "qT",
    "stepper", "m",     "p",       "bc",      "bc.left",    "bc.right",  "x_left",
    "x_right", "problem", "omega", "k1",      "k2",         "T",         "allow_full",
    "output"};

std::set<std::string> with(std::set<std::string> base, std::initializer_list<std::string> extra) {
  base.insert(extra.begin(), extra.end());
  return base;
}

FluxParams read_flux(const Config& cfg) {
  FluxParams f;
  f.alpha = cfg.get_double("flux.alpha", 0.5);
  f.beta = cfg.get_double("flux.beta", 0.0);
  f.tau = cfg.get_double("flux.tau", 0.0);
  f.boundary_upwind = cfg.get_double("flux.boundary_upwind", 0.0);
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return f;
}

// "periodic", "dirichlet", "neumann" or "mixed:gamma:kappa"; periodic is reported separately.
BoundaryCondition read_bc(const std::string& text, const std::string& key) {
  if (text == "dirichlet") return BoundaryCondition::dirichlet();
  if (text == "neumann") return BoundaryCondition::neumann();
  if (text.rfind("mixed:", 0) == 0) {
    const std::string rest = text.substr(6);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("key '" + key + "': expected mixed:gamma:kappa");
    try {
      return {parse_real(rest.substr(0, colon), key), parse_real(rest.substr(colon + 1), key)};
    } catch (const std::invalid_argument& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
  }
  throw ConfigError("key '" + key + "': unknown boundary condition '" + text + "'");
}

int read_dim(const Config& cfg) {
  const int dim = cfg.get_int("dim", 1);
  if (dim != 1 && dim != 2) throw ConfigError("dim must be 1 or 2");
  return dim;
}

void check_n(int n) {
  if (n < 2) throw ConfigError("n must be >= 2");
}

double read_cfl(const Config& cfg) {
  const double cfl = cfg.get_double("cfl", 0.1);
  if (!(cfl > 0.0)) throw ConfigError("cfl must be > 0");
  return cfl;
}

int default_wavenumber(int q) { return q <= 3 ? 2 : 2 * q; }

}  // namespace

void Problem::step(Eigen::VectorXd& w, double t) const {
  if (use_lts)
    w = lts_step(*op, w, t, dt, lts);
  else
    w = taylor_step(*op, w, t, {order, dt});
}

Problem build_problem(const Config& cfg, int n) {
  check_n(n);
  Problem pb;
  pb.dim = read_dim(cfg);
  pb.n = n;
  const std::string scheme = cfg.get_string("scheme", "staggered");
  if (scheme != "staggered" && scheme != "nonstaggered")
    throw ConfigError("scheme must be staggered or nonstaggered");
  const int qu = cfg.get_int("qu");
  const int qv = cfg.get_int("qv", pb.dim == 1 && scheme == "staggered" ? qu - 1 : qu);
  if (qu < 1 || qv < 0) throw ConfigError("need qu >= 1 and qv >= 0");
  const FluxParams flux = read_flux(cfg);
  const double cfl = read_cfl(cfg);
  pb.order = cfg.get_int("qT", std::max(qu, qv) + 1);
  if (pb.order < 1) throw ConfigError("qT must be >= 1");

  bool bounded = false;
  try {
    if (pb.dim == 1) {
      const double xl = cfg.get_double("x_left", -1.0);
      const double xr = cfg.get_double("x_right", 1.0);
      const std::string bc = cfg.get_string("bc", "periodic");
      std::string left = cfg.get_string("bc.left", bc), right = cfg.get_string("bc.right", bc);
      const bool periodic = left == "periodic" && right == "periodic";
      if (!periodic && (left == "periodic" || right == "periodic"))
        throw ConfigError("1D periodic boundaries must be set on both ends");
      bounded = !periodic;
      BoundaryPair pair;
      if (bounded) pair = {read_bc(left, "bc.left"), read_bc(right, "bc.right")};
      const double c = cfg.get_double("c", 1.0);
      const auto mesh = StaggeredMesh1D::build(xl, xr, n, periodic);
      pb.h = mesh.h();
      std::shared_ptr<Operator1D> op = std::make_shared<Operator1D>(
          scheme == "staggered" ? assemble_staggered_1d(mesh, qu, qv, flux, c, pair)
                                : assemble_nonstaggered_1d(mesh, qu, qv, flux, c, pair));
      pb.op = op;
      pb.energy = [op](const Eigen::VectorXd& w) { return op->energy(w); };

      const std::string problem = cfg.get_string("problem", "1d-wave");
      if (problem == "1d-wave") {
        if (bounded) throw ConfigError("problem 1d-wave needs periodic boundaries");
        const double omega = cfg.get_double("omega", 2.0 * qu * std::numbers::pi);
        auto u = [omega, c](const Point<1>& x, double t) { return std::sin(omega * (x[0] + c * t)); };
        auto v = [omega, c](const Point<1>& x, double t) {
          return omega * c * std::cos(omega * (x[0] + c * t));
        };
        pb.exact_state = [op, u, v](double t) { return op->scheme().project(u, v, t); };
        pb.error = [op, u, v](const Eigen::VectorXd& w, double t) {
          return op->scheme().l2_error(w, u, v, t);
        };
      } else if (problem == "1d-pulse") {
        const double x0 = 0.5 * (xl + xr), width = 0.1 * (xr - xl);
        auto u = [x0, width](const Point<1>& x, double) {
          const double z = (x[0] - x0) / width;
          return std::exp(-z * z);
        };
        auto v = [](const Point<1>&, double) { return 0.0; };
        pb.exact_state = [op, u, v](double t) { return op->scheme().project(u, v, t); };
      } else {
        throw ConfigError("unknown 1D problem '" + problem + "'");
      }
    } else {
      if (scheme != "staggered") throw ConfigError("the 2D operator is staggered only");
      const std::string bc = cfg.get_string("bc", "dirichlet");
      const BoundaryCondition cond = read_bc(bc, "bc");
      const std::string speed_name = cfg.get_string("speed", "quadratic");
      WaveSpeedField<2> speed;
      if (speed_name == "quadratic")
        speed = quadratic_speed();
      else if (speed_name == "uniform")
        speed = WaveSpeedField<2>::uniform(cfg.get_double("c", 1.0));
      else
        throw ConfigError("speed must be quadratic or uniform");
      bounded = true;
      const auto mesh = StaggeredMesh2D::build(n);
      pb.h = mesh.h();
      const std::string problem = cfg.get_string("problem", "2d-manufactured");
      if (problem != "2d-manufactured") throw ConfigError("unknown 2D problem '" + problem + "'");
      const double k1 = cfg.get_double("k1", default_wavenumber(qu));
      const double k2 = cfg.get_double("k2", default_wavenumber(qu));
      const ManufacturedSolution ms(k1, k2, speed);
      std::shared_ptr<Operator2D> op = std::make_shared<Operator2D>(
          assemble_staggered_2d(mesh, qu, qv, flux, speed, cond, ms.separable_forcing()));
      pb.op = op;
      pb.energy = [op](const Eigen::VectorXd& w) { return op->energy(w); };
      auto u = ms.u_field();
      auto v = ms.v_field();
      pb.exact_state = [op, u, v](double t) { return op->scheme().project(u, v, t); };
      pb.error = [op, u, v](const Eigen::VectorXd& w, double t) {
        return op->scheme().l2_error(w, u, v, t);
      };
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  pb.dt = cfl * pb.h;
  const std::string stepper = cfg.get_string("stepper", bounded ? "lts" : "taylor");
  if (stepper == "lts") {
    const int m = cfg.get_int("m", 3);
    const int p = cfg.get_int("p", pb.order);
    try {
      pb.lts = make_lts_config(*pb.op, m, p, pb.order, cfg.get_bool("allow_full", false));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    pb.use_lts = true;
  } else if (stepper != "taylor") {
    throw ConfigError("stepper must be lts or taylor");
  }
  return pb;
}

namespace {

// Steps to T with dt rescaled so that an integer number of steps lands on T.
Eigen::VectorXd evolve_to(Problem& pb, double final_time) {
  const int steps = std::max(1, static_cast<int>(std::lround(final_time / pb.dt)));
  pb.dt = final_time / steps;
  Eigen::VectorXd w = pb.exact_state(0.0);
  for (int s = 0; s < steps; ++s) {
    pb.step(w, s * pb.dt);
    if (!w.allFinite()) break;
  }
  return w;
}

}  // namespace

ConvergenceResult run_convergence(const Config& cfg) {
  cfg.reject_unknown(with(kProblemKeys, {"n"}));
  const double final_time = cfg.get_double("T");
  if (!(final_time > 0.0)) throw ConfigError("T must be > 0");
  ConvergenceResult r;
  std::vector<double> hs, eu, ev;
  for (int n : cfg.get_int_list("n")) {
    Problem pb = build_problem(cfg, n);
    if (!pb.error) throw ConfigError("the selected problem has no exact solution");
    const Eigen::VectorXd w = evolve_to(pb, final_time);
    ConvergenceRow row;
    row.n = n;
    row.h = pb.h;
    if (w.allFinite()) std::tie(row.err_u, row.err_v) = pb.error(w, final_time);
    else row.err_u = row.err_v = std::numeric_limits<double>::infinity();
    row.diverged = !(row.err_u <= 1e3 && row.err_v <= 1e3);
    if (!row.diverged) {
      hs.push_back(row.h);
      eu.push_back(row.err_u);
      ev.push_back(row.err_v);
    }
    r.rows.push_back(row);
  }
  if (hs.size() >= 2) {
    r.rate_u = fit_power_law(hs, eu).exponent;
    r.rate_v = fit_power_law(hs, ev).exponent;
  }
  return r;
}

void write_convergence_csv(const ConvergenceResult& r, std::ostream& out) {
  out << "n,h,err_u,err_v\n" << std::setprecision(10);
  for (const auto& row : r.rows) {
    out << row.n << ',' << row.h << ',';
    if (row.diverged)
      out << "diverged,diverged\n";
    else
      out << row.err_u << ',' << row.err_v << '\n';
  }
  out << std::setprecision(4) << "rate,," << r.rate_u << ',' << r.rate_v << '\n';
}

std::vector<SpectrumRow> run_spectrum(const Config& cfg) {
  cfg.reject_unknown({"scheme", "qu", "h", "qv.offset", "flux.alpha", "flux.beta", "flux.tau", "c",
                      "leapfrog.table", "output"});
  const std::string scheme = cfg.get_string("scheme", "staggered");
  if (scheme != "staggered" && scheme != "nonstaggered")
    throw ConfigError("scheme must be staggered or nonstaggered");
  const FluxParams flux = read_flux(cfg);
  const double c = cfg.get_double("c", 1.0);
  const int offset = cfg.get_int("qv.offset", 0);

  // Optional user table "order value": stability limits of an external scheme in units of dt * rho.
  std::map<int, double> table;
  if (cfg.has("leapfrog.table")) {
    std::ifstream in(cfg.get_string("leapfrog.table"));
    if (!in) throw ConfigError("cannot open leapfrog.table");
    int order = 0;
    double value = 0.0;
    while (in >> order >> value) table[order] = value;
  }

  std::vector<SpectrumRow> rows;
  for (double h : cfg.get_double_list("h")) {
    const double nd = 2.0 / h;
    const int n = static_cast<int>(std::lround(nd));
    if (std::abs(nd - n) > 1e-9 * nd) throw ConfigError("h must divide the interval [-1, 1]");
    check_n(n);
    const auto mesh = StaggeredMesh1D::build(-1.0, 1.0, n, true);
    for (int qu : cfg.get_int_list("qu")) {
      const int qv = qu + offset;
      if (qu < 1 || qv < 0) throw ConfigError("need qu >= 1 and qu + qv.offset >= 0");
      const Operator1D op = scheme == "staggered" ? assemble_staggered_1d(mesh, qu, qv, flux, c)
                                                  : assemble_nonstaggered_1d(mesh, qu, qv, flux, c);
      const auto spec = semidiscrete_spectrum(op);
      SpectrumRow row;
      row.scheme = scheme;
      row.qu = qu;
      row.qv = qv;
      row.h = mesh.h();
      row.rho = spec.spectral_radius;
      row.scaled = spec.spectral_radius * row.h / qu;
      row.max_abs_real = spec.max_abs_real;
      // Limits are only tabulated for even orders; odd qu uses the next even one.
      const auto it = table.find(qu % 2 == 0 ? qu : qu + 1);
      if (it != table.end()) row.cfl_ratio = std::sqrt(it->second) / (row.rho * row.h);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_spectrum_csv(const std::vector<SpectrumRow>& rows, std::ostream& out) {
  const bool ratio = !rows.empty() && std::any_of(rows.begin(), rows.end(), [](const SpectrumRow& r) {
    return !std::isnan(r.cfl_ratio);
  });
  out << "qu,h,rho,rho*h/qu" << (ratio ? ",cfl_ratio" : "") << '\n' << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.qu << ',' << r.h << ',' << r.rho << ',' << r.scaled;
    if (ratio) out << ',' << r.cfl_ratio;
    out << '\n';
  }
}

AuditResult run_ltsaudit(const Config& cfg) {
  cfg.reject_unknown(with(kProblemKeys, {"n"}));
  Config c = cfg;
  if (!c.has("problem")) c.set("problem", read_dim(cfg) == 1 ? "1d-pulse" : "2d-manufactured");
  if (!c.has("stepper")) c.set("stepper", "lts");
  if (read_dim(cfg) == 1 && !c.has("bc") && !c.has("bc.left")) {
    c.set("bc.left", "neumann");
    c.set("bc.right", "dirichlet");
  }
  Problem pb = build_problem(c, cfg.get_int("n"));
  AuditResult r;
  r.dofs = pb.op->size();
  Eigen::MatrixXd b;
  try {
    // The audit is of the homogeneous step; the forcing does not enter B.
    const Stepper step = [&](Eigen::MatrixXd& w) {
      if (pb.use_lts) {
        struct Homogeneous final : EvolutionOperator {
          const DgOperatorBase* op;
          Eigen::Index size() const override { return op->size(); }
          void apply_linear(const Eigen::MatrixXd& in, Eigen::MatrixXd& out,
                            const DofMask* rows) const override {
            op->apply_linear(in, out, rows);
          }
          DofMask column_support(const DofMask& rows) const override { return op->column_support(rows); }
        } h;
        h.op = pb.op.get();
        lts_step(h, w, 0.0, pb.dt, pb.lts);
      } else {
        struct Homogeneous final : EvolutionOperator {
          const DgOperatorBase* op;
          Eigen::Index size() const override { return op->size(); }
          void apply_linear(const Eigen::MatrixXd& in, Eigen::MatrixXd& out,
                            const DofMask* rows) const override {
            op->apply_linear(in, out, rows);
          }
        } h;
        h.op = pb.op.get();
        taylor_step(h, w, 0.0, {pb.order, pb.dt});
      }
    };
    b = build_one_step_matrix(pb.op->size(), step);
  } catch (const std::length_error& e) {
    throw ConfigError(e.what());
  }
  r.report = eig_moduli(b);
  return r;
}

void write_audit_csv(const AuditResult& r, std::ostream& out) {
  out << "index,one_minus_modulus\n" << std::setprecision(10);
  for (const auto& e : r.report.entries) out << e.index << ',' << e.one_minus_modulus << '\n';
  out << "# min(1-|lambda|) = " << r.report.min_one_minus_modulus << '\n';
}

void write_snapshot(const std::string& path, const DofLayout& layout, const Eigen::VectorXd& w) {
  static_assert(std::endian::native == std::endian::little, "snapshot writer assumes little endian");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write snapshot '" + path + "'");
  const std::int64_t header[6] = {layout.dim(),
                                  layout.qu(),
                                  layout.qv(),
                                  layout.num_u_elements(),
                                  layout.num_v_elements(),
                                  static_cast<std::int64_t>(layout.total_dofs())};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  out.write(reinterpret_cast<const char*>(w.data()), static_cast<std::streamsize>(w.size() * sizeof(double)));
}

std::vector<EvolveRow> run_evolve(const Config& cfg, std::ostream* csv) {
  cfg.reject_unknown(with(kProblemKeys, {"n", "steps", "output.every", "snapshot.every", "snapshot.prefix"}));
  Problem pb = build_problem(cfg, cfg.get_int("n"));
  int steps = 0;
  if (cfg.has("steps")) {
    steps = cfg.get_int("steps");
  } else {
    const double final_time = cfg.get_double("T");
    steps = std::max(1, static_cast<int>(std::lround(final_time / pb.dt)));
    pb.dt = final_time / steps;
  }
  if (steps < 0) throw ConfigError("steps must be >= 0");
  const int every = cfg.get_int("output.every", 1);
  const int snap_every = cfg.get_int("snapshot.every", 0);
  const std::string prefix = cfg.get_string("snapshot.prefix", "snapshot");
  if (every < 1 || snap_every < 0) throw ConfigError("output cadences must be positive");

  std::vector<EvolveRow> rows;
  auto record = [&](int s, double t, const Eigen::VectorXd& w) {
    EvolveRow row;
    row.step = s;
    row.t = t;
    row.energy = pb.energy(w);
    if (pb.error) std::tie(row.err_u, row.err_v) = pb.error(w, t);
    rows.push_back(row);
    if (csv) {
      *csv << row.step << ',' << std::setprecision(12) << row.t << ',' << row.energy << ',';
      if (pb.error) *csv << row.err_u << ',' << row.err_v;
      else *csv << ',';
      *csv << '\n' << std::flush;
    }
    if (snap_every > 0 && s % snap_every == 0) {
      char name[32];
      std::snprintf(name, sizeof(name), "_%06d.bin", s);
      write_snapshot(prefix + name, pb.op->layout(), w);
    }
  };
  if (csv) *csv << "step,t,energy,err_u,err_v\n";
  Eigen::VectorXd w = pb.exact_state(0.0);
  record(0, 0.0, w);
  double last_good = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double t = s * pb.dt;
    pb.step(w, t);
    if (!w.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite state after step " << s + 1 << "; last good time t = " << last_good;
      throw NumericalError(msg.str());
    }
    last_good = (s + 1) * pb.dt;
    if ((s + 1) % every == 0 || s + 1 == steps) record(s + 1, last_good, w);
  }
  return rows;
}

int run_command(const std::string& command, const Config& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (cfg.has("output")) {
      file.open(cfg.get_string("output"));
      if (!file) throw ConfigError("cannot open output file '" + cfg.get_string("output") + "'");
      sink = &file;
    }
    if (command == "converge") {
      const auto r = run_convergence(cfg);
      write_convergence_csv(r, *sink);
    } else if (command == "spectrum") {
      write_spectrum_csv(run_spectrum(cfg), *sink);
    } else if (command == "ltsaudit") {
      const auto r = run_ltsaudit(cfg);
      write_audit_csv(r, *sink);
      err << "dofs = " << r.dofs << ", min(1-|lambda|) = " << r.report.min_one_minus_modulus << '\n';
    } else if (command == "evolve") {
      run_evolve(cfg, sink);
    } else {
      throw ConfigError("unknown command '" + command + "'");
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wavedg::cli
