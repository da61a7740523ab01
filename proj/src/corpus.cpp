#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mcz/harness.hpp"
#include "mcz/rng.hpp"

namespace mcz {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double bump(double x, double center, double width) {
  const double s = (x - center) / width;
  if (std::fabs(s) >= 1.0) return 0.0;
  return std::exp(1.0) * std::exp(-1.0 / (1.0 - s * s));
}

CorpusItem canonical(const std::string& kind) {
  CorpusItem item;
  if (kind == "step-functions") {
    item.descriptor = "step[canonical] sign(x)";
    item.fn = [](double x) { return x < 0.0 ? -1.0 : 1.0; };
  } else if (kind == "smooth-bumps") {
    item.descriptor = "bump[canonical] center=0 width=0.5";
    item.fn = [](double x) { return bump(x, 0.0, 0.5); };
  } else if (kind == "power-weights") {
    item.descriptor = "power[canonical] a=-0.4";
    item.aux = -0.4;
    item.fn = [](double x) { return std::pow(std::max(std::fabs(x), 1e-4), -0.4); };
  } else if (kind == "bmo-bumps") {
    item.descriptor = "bmo[canonical] single bump";
    item.fn = [](double x) { return bump(x, 0.0, 0.6); };
  } else if (kind == "log-bmo") {
    item.descriptor = "log-bmo[canonical] log|x|";
    item.fn = [](double x) { return std::log(std::max(std::fabs(x), 1e-6)); };
  } else if (kind == "exponents") {
    item.descriptor = "exponent[canonical] base=2 amp=0.3";
    item.aux = 2.0;
    item.fn = [](double x) { return 2.0 + 0.3 / (1.0 + x * x); };
  } else {
    throw std::invalid_argument("generate_corpus: unknown kind '" + kind + "'");
  }
  return item;
}

CorpusItem draw_step(Rng& rng) {
  const int pieces = 2 + static_cast<int>(rng.integer(15));  // at most 16
  std::vector<double> cuts(static_cast<std::size_t>(pieces - 1));
  for (auto& c : cuts) c = rng.uniform(-1.0, 1.0);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> values(static_cast<std::size_t>(pieces));
  for (auto& v : values) v = rng.uniform(-2.0, 2.0);
  CorpusItem item;
  item.descriptor = "step pieces=" + std::to_string(pieces);
  item.fn = [cuts, values](double x) {
    std::size_t i = 0;
    while (i < cuts.size() && x >= cuts[i]) ++i;
    return values[i];
  };
  return item;
}

CorpusItem draw_bumps(Rng& rng, bool middle_half, const char* label) {
  const int n = 1 + static_cast<int>(rng.integer(3));
  std::vector<double> centers, widths, amps;
  for (int i = 0; i < n; ++i) {
    const double w = rng.uniform(1.0 / 16.0, 0.25);
    const double reach = middle_half ? 0.5 - w : 0.9;
    centers.push_back(rng.uniform(-reach, reach));
    widths.push_back(w);
    amps.push_back((rng.coin() ? 1.0 : -1.0) * rng.uniform(0.3, 2.0));
  }
  CorpusItem item;
  item.descriptor = std::string(label) + " n=" + std::to_string(n);
  item.fn = [centers, widths, amps](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) s += amps[i] * bump(x, centers[i], widths[i]);
    return s;
  };
  return item;
}

CorpusItem draw_power(Rng& rng) {
  const double a = rng.uniform(-0.5, 0.5);
  CorpusItem item;
  item.descriptor = "power a=" + fmt(a);
  item.aux = a;
  item.fn = [a](double x) { return std::pow(std::max(std::fabs(x), 1e-4), a); };
  return item;
}

CorpusItem draw_log_bmo(Rng& rng) {
  const double c = rng.uniform(0.3, 1.0);
  const double x0 = rng.uniform(-0.5, 0.5);
  CorpusItem item;
  item.descriptor = "log-bmo c=" + fmt(c) + " x0=" + fmt(x0);
  item.fn = [c, x0](double x) { return c * std::log(std::max(std::fabs(x - x0), 1e-6)); };
  return item;
}

CorpusItem draw_exponent(Rng& rng) {
  const double base = rng.uniform(1.5, 2.5);
  double amp = rng.uniform(-0.4, 0.4);
  amp = std::max(amp, 1.2 - base);  // keep the lower bound away from 1
  CorpusItem item;
  item.descriptor = "exponent base=" + fmt(base) + " amp=" + fmt(amp);
  item.aux = base;
  item.fn = [base, amp](double x) { return base + amp / (1.0 + x * x); };
  return item;
}

}  // namespace

std::vector<CorpusItem> generate_corpus(const std::string& kind, std::uint64_t seed, int count) {
  if (count < 0) throw std::invalid_argument("generate_corpus: negative count");
  std::vector<CorpusItem> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 0) {
    canonical(kind);  // still validates the kind
    return out;
  }
  out.push_back(canonical(kind));
  Rng rng(seed);
  Rng sub = rng.fork("corpus:" + kind);
  for (int i = 1; i < count; ++i) {
    if (kind == "step-functions")
      out.push_back(draw_step(sub));
    else if (kind == "smooth-bumps")
      out.push_back(draw_bumps(sub, true, "bump"));
    else if (kind == "power-weights")
      out.push_back(draw_power(sub));
    else if (kind == "bmo-bumps")
      out.push_back(draw_bumps(sub, false, "bmo"));
    else if (kind == "log-bmo")
      out.push_back(draw_log_bmo(sub));
    else
      out.push_back(draw_exponent(sub));
  }
  return out;
}

}  // namespace mcz
