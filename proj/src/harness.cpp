#include "splitstep/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "splitstep/errors.hpp"

namespace splitstep {

namespace {

double problem_span(const ProblemConfig& config) {
  if (const auto* d = std::get_if<DahlquistParams>(&config)) return d->t_end;
  const auto& osc = std::get<OscillatorSpec>(config);
  return osc.r_end - osc.r0;
}

bool has_exact_formula(const ProblemConfig& config) {
  if (std::holds_alternative<DahlquistParams>(config)) return true;
  const auto& osc = std::get<OscillatorSpec>(config);
  return osc.has_constant_spring() && osc.spring(osc.r0) > 0.0;
}

Vector exact_reference(const ProblemConfig& config) {
  if (const auto* d = std::get_if<DahlquistParams>(&config)) {
    return exact_solution_2x2(d->lambda1, d->lambda2, d->t_end);
  }
  const auto& osc = std::get<OscillatorSpec>(config);
  return oscillator_exact(osc, osc.r_end);
}

unsigned thread_budget(unsigned requested, std::size_t cells) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("SPLITSTEP_THREADS")) {
      unsigned parsed = 0;
      const std::string_view sv(env);
      auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), parsed);
      if (ec == std::errc() && parsed > 0) n = parsed;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(cells, 1)));
}

// Shortest round-trip scientific form, padded to at least five significant digits.
std::string format_error(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  std::string s(buf, res.ptr);
  const auto e = s.find('e');
  std::size_t digits = 0;
  for (std::size_t i = 0; i < e; ++i) digits += std::isdigit(static_cast<unsigned char>(s[i])) ? 1 : 0;
  if (digits < 5) {
    res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 4);
    s.assign(buf, res.ptr);
  }
  return s;
}

std::string format_short(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", precision, x);
  return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.size() - start : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("parse_csv: bad ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

SplitProblem make_problem(const ProblemConfig& config) {
  if (const auto* d = std::get_if<DahlquistParams>(&config)) {
    return dahlquist_2x2(d->lambda1, d->lambda2, d->t_end);
  }
  return radial_oscillator(std::get<OscillatorSpec>(config));
}

std::string_view to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::ExactFormula: return "exact";
    case ReferenceKind::ExpmFlow: return "expm";
    case ReferenceKind::FineSolve: return "fine";
  }
  return "exact";
}

double default_floor(const QuadRule& rule) {
  return rule.kind() == RuleKind::Bode ? 1e-12 : 1e-8;
}

ReferenceKind StudyConfig::effective_reference() const {
  if (reference) return *reference;
  if (has_exact_formula(problem)) return ReferenceKind::ExactFormula;
  if (make_problem(problem).is_constant()) return ReferenceKind::ExpmFlow;
  return ReferenceKind::FineSolve;
}

void StudyConfig::validate() const {
  if (iterations.empty()) throw std::invalid_argument("study: iteration list is empty");
  if (partitions.empty()) throw std::invalid_argument("study: partition list is empty");
  for (int i : iterations) {
    if (i < 1) throw std::invalid_argument("study: iteration counts must be >= 1");
  }
  const SplitProblem p = make_problem(problem);
  p.validate();
  const double span = p.t_end - p.t0;
  for (int n : partitions) {
    if (n < 1) throw std::invalid_argument("study: partition counts must be >= 1");
    const int m = grid_intervals(span / n, h);
    if (m < rule.panel_width()) {
      throw GridIncompatible("study: " + std::to_string(m) + " intervals per step with " +
                             std::to_string(n) + " partitions is too coarse for " +
                             std::string(rule.name()));
    }
  }
  const ReferenceKind ref = effective_reference();
  if (ref == ReferenceKind::ExactFormula && !has_exact_formula(problem)) {
    throw std::invalid_argument("study: no exact formula for this problem");
  }
  if (ref == ReferenceKind::ExpmFlow && !p.is_constant()) {
    throw std::invalid_argument("study: expm reference needs constant operators");
  }
}

double ReportRow::max_error() const {
  if (!errors || errors->empty()) return std::nan("");
  return *std::max_element(errors->begin(), errors->end());
}

const ReportRow* ConvergenceReport::find(int iterations, int partitions) const {
  for (const auto& r : rows) {
    if (r.iterations == iterations && r.partitions == partitions) return &r;
  }
  return nullptr;
}

const OrderEstimate* ConvergenceReport::order_for(int iterations) const {
  for (const auto& o : orders) {
    if (o.iterations == iterations) return &o;
  }
  return nullptr;
}

double estimate_order(std::span<const std::pair<double, double>> tau_err, double floor) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [tau, err] : tau_err) {
    if (std::isfinite(err) && err > floor && tau > 0.0) logs.emplace_back(std::log(tau), std::log(err));
  }
  if (logs.size() < 2) {
    throw InsufficientData("estimate_order: " + std::to_string(logs.size()) +
                           " point(s) above floor " + format_short(floor, 1));
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(logs.size());
  my /= static_cast<double>(logs.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : logs) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) throw InsufficientData("estimate_order: all points share one tau");
  return sxy / sxx;
}

void compute_orders(ConvergenceReport& report) {
  report.orders.clear();
  std::vector<int> counts;
  for (const auto& r : report.rows) {
    if (std::find(counts.begin(), counts.end(), r.iterations) == counts.end()) counts.push_back(r.iterations);
  }
  for (int i : counts) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : report.rows) {
      if (r.iterations == i && r.errors) pts.emplace_back(r.tau, r.max_error());
    }
    OrderEstimate est;
    est.iterations = i;
    est.points_used = static_cast<int>(std::count_if(pts.begin(), pts.end(), [&](const auto& p) {
      return p.second > report.floor;
    }));
    try {
      est.order = estimate_order(pts, report.floor);
    } catch (const InsufficientData&) {
      est.order.reset();
    }
    report.orders.push_back(est);
  }
}

ConvergenceReport run_study(const StudyConfig& config) {
  config.validate();
  const SplitProblem problem = make_problem(config.problem);
  const double span = problem.t_end - problem.t0;
  const ReferenceKind ref_kind = config.effective_reference();

  std::optional<Vector> shared_reference;
  if (ref_kind == ReferenceKind::ExactFormula) {
    shared_reference = exact_reference(config.problem);
  } else if (ref_kind == ReferenceKind::ExpmFlow) {
    shared_reference = expm(problem.a.at(problem.t0) + problem.b.at(problem.t0), span) * problem.u0;
  }

  ConvergenceReport report;
  report.rule = config.rule;
  report.floor = config.effective_floor();
  report.span = span;
  report.dim = problem.u0.size();

  std::vector<int> iters = config.iterations;
  std::vector<int> parts = config.partitions;
  std::sort(iters.begin(), iters.end());
  iters.erase(std::unique(iters.begin(), iters.end()), iters.end());
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  for (int i : iters) {
    for (int n : parts) {
      ReportRow row;
      row.iterations = i;
      row.partitions = n;
      row.tau = span / n;
      report.rows.push_back(row);
    }
  }

  auto evaluate = [&](ReportRow& row) {
    try {
      const Vector approx =
          iterative_split_solve(problem, row.partitions, row.iterations, config.rule, config.h);
      const Vector reference = shared_reference
                                   ? *shared_reference
                                   : iterative_split_solve(problem, row.partitions * 16,
                                                           row.iterations + 2, QuadRule::bode(),
                                                           config.h / 16.0);
      row.errors = max_abs_err(approx, reference);
    } catch (const std::exception& e) {
      row.errors.reset();
      row.failure = e.what();
    }
  };

  const unsigned workers = thread_budget(config.threads, report.rows.size());
  if (workers <= 1) {
    for (auto& row : report.rows) evaluate(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < report.rows.size(); k = next++) evaluate(report.rows[k]);
      });
    }
    for (auto& t : pool) t.join();
  }

  compute_orders(report);
  return report;
}

std::string emit_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "iterations,partitions";
  for (std::size_t c = 1; c <= report.dim; ++c) out << ",err" << c;
  out << '\n';
  for (const auto& r : report.rows) {
    out << r.iterations << ',' << r.partitions;
    for (std::size_t c = 0; c < report.dim; ++c) {
      out << ',' << (r.errors && c < r.errors->size() ? format_error((*r.errors)[c]) : "NA");
    }
    out << '\n';
  }
  if (report.rows.empty()) return out.str();
  out << "# rule=" << report.rule.name() << " label=" << report.rule.label()
      << " floor=" << format_error(report.floor) << " span=" << format_error(report.span) << '\n';
  for (const auto& o : report.orders) {
    out << "# order iterations=" << o.iterations << ' '
        << (o.order ? format_short(*o.order, 4) : std::string("insufficient-data"))
        << " points=" << o.points_used << '\n';
  }
  return out.str();
}

ConvergenceReport parse_csv(std::string_view text) {
  ConvergenceReport report;
  report.rows.clear();
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with("# rule=")) {
        for (const auto& field : split(line.substr(2), ' ')) {
          const auto eq = field.find('=');
          if (eq == std::string::npos) continue;
          const std::string key = field.substr(0, eq);
          const std::string_view value = std::string_view(field).substr(eq + 1);
          if (key == "rule") {
            if (auto rule = QuadRule::parse(value)) report.rule = *rule;
          } else if (key == "floor") {
            report.floor = parse_number<double>(value, "floor");
          } else if (key == "span") {
            report.span = parse_number<double>(value, "span");
          }
        }
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (!header_seen) {
      if (fields.size() < 2 || fields[0] != "iterations" || fields[1] != "partitions") {
        throw std::invalid_argument("parse_csv: missing header");
      }
      report.dim = fields.size() - 2;
      header_seen = true;
      continue;
    }
    if (fields.size() != report.dim + 2) throw std::invalid_argument("parse_csv: ragged row");
    ReportRow row;
    row.iterations = parse_number<int>(fields[0], "iterations");
    row.partitions = parse_number<int>(fields[1], "partitions");
    if (fields[2] == "NA") {
      row.errors.reset();
    } else {
      std::vector<double> errs;
      for (std::size_t c = 2; c < fields.size(); ++c) errs.push_back(parse_number<double>(fields[c], "error"));
      row.errors = std::move(errs);
    }
    report.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("parse_csv: missing header");
  for (auto& r : report.rows) r.tau = report.span / r.partitions;
  compute_orders(report);
  return report;
}

std::string emit_table(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "Iterative splitting, " << report.rule.label() << " rule\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%10s %11s", "iterations", "partitions");
  out << buf;
  for (std::size_t c = 1; c <= report.dim; ++c) {
    std::snprintf(buf, sizeof buf, " %12s", ("err" + std::to_string(c)).c_str());
    out << buf;
  }
  out << '\n';
  int last_iter = -1;
  for (const auto& r : report.rows) {
    if (last_iter != -1 && r.iterations != last_iter) out << '\n';
    last_iter = r.iterations;
    std::snprintf(buf, sizeof buf, "%10d %11d", r.iterations, r.partitions);
    out << buf;
    for (std::size_t c = 0; c < report.dim; ++c) {
      const std::string cell = r.errors && c < r.errors->size() ? format_short((*r.errors)[c], 4) : "NA";
      std::snprintf(buf, sizeof buf, " %12s", cell.c_str());
      out << buf;
    }
    out << '\n';
  }
  if (!report.orders.empty()) {
    out << "\nestimated order (floor " << format_short(report.floor, 1) << ")\n";
    for (const auto& o : report.orders) {
      std::snprintf(buf, sizeof buf, "%10d %11s\n", o.iterations,
                    o.order ? format_short(*o.order, 3).c_str() : "n/a");
      out << buf;
    }
  }
  return out.str();
}

std::string emit_order_plot_data(std::span<const ConvergenceReport> reports) {
  std::ostringstream out;
  out << "# iterative splitting convergence: final-time error against step length tau\n";
  for (const auto& report : reports) {
    std::map<int, std::vector<const ReportRow*>> blocks;
    for (const auto& r : report.rows) blocks[r.iterations].push_back(&r);
    for (auto& [iters, rows] : blocks) {
      std::sort(rows.begin(), rows.end(), [](const ReportRow* x, const ReportRow* y) { return x->tau > y->tau; });
      out << "\n# rule=" << report.rule.label() << " iterations=" << iters << '\n';
      out << "# tau";
      for (std::size_t c = 1; c <= report.dim; ++c) out << "\terr" << c;
      out << '\n';
      for (const ReportRow* r : rows) {
        out << format_error(r->tau);
        for (std::size_t c = 0; c < report.dim; ++c) {
          out << '\t' << (r->errors && c < r->errors->size() ? format_error((*r->errors)[c]) : "NA");
        }
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace splitstep
