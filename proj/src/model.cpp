#include "laminal/model.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "laminal/error.hpp"
#include "laminal/partition.hpp"

namespace laminal {

namespace {

void require_unique(const std::vector<std::string>& labels, const char* axis) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw Error(ErrorCode::ParseError, std::string("empty ") + axis + " label");
    if (!seen.insert(l).second) throw Error(ErrorCode::DuplicateLabel, std::string(axis) + " label '" + l + "'");
  }
}

}  // namespace

FiniteModel::FiniteModel(std::vector<std::string> theta_labels, std::vector<std::string> sample_labels, Matrix probs,
                         std::string name)
    : name_(std::move(name)), thetas_(std::move(theta_labels)), samples_(std::move(sample_labels)),
      probs_(std::move(probs)) {
  if (thetas_.empty() || samples_.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "a model needs at least one parameter value and one sample point");
  }
  if (probs_.size() != thetas_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(probs_.size()) + " rows for " + std::to_string(thetas_.size()) + " parameter values");
  }
  require_unique(thetas_, "theta");
  require_unique(samples_, "sample");
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i].size() != samples_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "row '" + thetas_[i] + "' has " + std::to_string(probs_[i].size()) +
                                                    " entries for " + std::to_string(samples_.size()) + " samples");
    }
    Rational sum;
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      if (probs_[i][j].sign() < 0) {
        throw Error(ErrorCode::NegativeProbability,
                    "P_" + thetas_[i] + "({" + samples_[j] + "}) = " + probs_[i][j].str());
      }
      sum += probs_[i][j];
    }
    if (sum != Rational(1)) throw Error(ErrorCode::RowSumError, "row '" + thetas_[i] + "' sums to " + sum.str());
  }
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    const bool alive = std::any_of(probs_.begin(), probs_.end(), [&](const Row& r) { return !r[j].is_zero(); });
    if (!alive) throw Error(ErrorCode::DeadSamplePoint, "sample '" + samples_[j] + "' has probability 0 under every theta");
  }
}

Row FiniteModel::column(Index sample) const {
  Row col;
  col.reserve(probs_.size());
  for (const auto& r : probs_) col.push_back(r[sample]);
  return col;
}

Rational FiniteModel::event_probability(Index theta, std::span<const Index> event) const {
  Rational sum;
  for (Index x : event) sum += probs_[theta][x];
  return sum;
}

Index FiniteModel::sample_index(const std::string& label) const {
  auto it = std::find(samples_.begin(), samples_.end(), label);
  if (it == samples_.end()) throw Error(ErrorCode::UnknownSampleLabel, "'" + label + "' in model '" + name_ + "'");
  return static_cast<Index>(it - samples_.begin());
}

FiniteModel FiniteModel::with_name(std::string name) const {
  FiniteModel copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

FiniteModel FiniteModel::with_dropped(std::vector<std::string> dropped) const {
  FiniteModel copy = *this;
  copy.dropped_ = std::move(dropped);
  return copy;
}

InferenceBase::InferenceBase(FiniteModel m, Index x) : model(std::move(m)), observed(x) {
  if (observed >= model.sample_count()) {
    throw Error(ErrorCode::InvalidIndex, "observed index " + std::to_string(observed) + " outside sample space of size " +
                                             std::to_string(model.sample_count()));
  }
}

Weights::Weights(std::vector<Rational> values) : values_(std::move(values)) {
  Rational sum;
  for (const auto& v : values_) {
    if (v.sign() < 0) throw Error(ErrorCode::InvalidWeights, "negative weight " + v.str());
    sum += v;
  }
  if (sum != Rational(1)) throw Error(ErrorCode::InvalidWeights, "weights sum to " + sum.str());
}

FiniteModel build_model(std::vector<std::string> theta_labels, std::vector<std::string> sample_labels, Matrix probs) {
  return FiniteModel(std::move(theta_labels), std::move(sample_labels), std::move(probs));
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace

FiniteModel parse_model(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto t = tokens(line);
    if (!t.empty()) lines.emplace_back(number, std::move(t));
  }
  auto expect = [&](std::size_t i, const char* keyword) -> const std::vector<std::string>& {
    if (i >= lines.size()) throw Error(ErrorCode::ParseError, std::string("missing '") + keyword + "' line");
    const auto& [number, t] = lines[i];
    if (t.front() != keyword) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(number) + ": expected '" + keyword + "', found '" + t.front() + "'");
    }
    return t;
  };
  const auto& header = expect(0, "model");
  if (header.size() != 2) throw Error(ErrorCode::ParseError, "line " + std::to_string(lines[0].first) + ": expected 'model <name>'");
  const auto& theta_line = expect(1, "thetas");
  const auto& sample_line = expect(2, "samples");
  std::vector<std::string> thetas(theta_line.begin() + 1, theta_line.end());
  std::vector<std::string> samples(sample_line.begin() + 1, sample_line.end());
  if (thetas.empty()) throw Error(ErrorCode::ParseError, "no parameter labels");
  if (samples.empty()) throw Error(ErrorCode::ParseError, "no sample labels");
  require_unique(thetas, "theta");
  require_unique(samples, "sample");

  Matrix probs(thetas.size());
  std::vector<bool> seen(thetas.size(), false);
  if (lines.size() != 3 + thetas.size()) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(thetas.size()) + " probability rows, found " +
                                           std::to_string(lines.size() - 3));
  }
  for (std::size_t i = 3; i < lines.size(); ++i) {
    const auto& [number, t] = lines[i];
    auto it = std::find(thetas.begin(), thetas.end(), t.front());
    if (it == thetas.end()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": unknown theta '" + t.front() + "'");
    }
    const auto row = static_cast<std::size_t>(it - thetas.begin());
    if (seen[row]) throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": repeated row '" + t.front() + "'");
    seen[row] = true;
    if (t.size() != samples.size() + 1) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected " +
                                             std::to_string(samples.size()) + " probabilities");
    }
    for (std::size_t j = 1; j < t.size(); ++j) probs[row].push_back(Rational::parse(t[j]));
  }
  return FiniteModel(std::move(thetas), std::move(samples), std::move(probs), header[1]);
}

FiniteModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

std::string serialize_model(const FiniteModel& model) {
  std::string out = "model " + model.name() + "\nthetas";
  for (const auto& t : model.thetas()) out += " " + t;
  out += "\nsamples";
  for (const auto& s : model.samples()) out += " " + s;
  out += "\n";
  for (std::size_t i = 0; i < model.theta_count(); ++i) {
    out += model.thetas()[i];
    for (const auto& q : model.row(i)) out += " " + q.str();
    out += "\n";
  }
  return out;
}

std::string content_hash(const InferenceBase& ib) {
  std::uint64_t h = 14695981039346656037ULL;
  const std::string text = serialize_model(ib.model) + "observed " + ib.observed_label() + "\n";
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

namespace detail {

namespace {

// Keeps the columns with some positive entry; the rest are reported as dropped.
DerivedModel drop_dead_columns(const FiniteModel& parent, std::vector<Index> columns, Matrix rows, std::string name) {
  std::vector<Index> keep;
  std::vector<std::string> dropped = parent.dropped();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const bool alive = std::any_of(rows.begin(), rows.end(), [&](const Row& r) { return !r[c].is_zero(); });
    if (alive) {
      keep.push_back(c);
    } else {
      dropped.push_back(parent.samples()[columns[c]]);
    }
  }
  std::vector<std::string> labels;
  std::vector<Index> origin;
  for (Index c : keep) {
    labels.push_back(parent.samples()[columns[c]]);
    origin.push_back(columns[c]);
  }
  Matrix kept(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Index c : keep) kept[i].push_back(std::move(rows[i][c]));
  }
  FiniteModel model(parent.thetas(), std::move(labels), std::move(kept), std::move(name));
  return {model.with_dropped(std::move(dropped)), std::move(origin)};
}

}  // namespace

DerivedModel condition_tracked(const FiniteModel& model, std::span<const Index> event) {
  std::vector<Index> columns(event.begin(), event.end());
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  for (Index x : columns) {
    if (x >= model.sample_count()) throw Error(ErrorCode::InvalidIndex, "event index " + std::to_string(x));
  }
  Matrix rows(model.theta_count());
  for (std::size_t i = 0; i < model.theta_count(); ++i) {
    const Rational mass = model.event_probability(i, columns);
    if (mass.is_zero()) {
      throw Error(ErrorCode::ZeroProbabilityEvent, "event has probability 0 under '" + model.thetas()[i] + "'");
    }
    for (Index x : columns) rows[i].push_back(model.prob(i, x) / mass);
  }
  return drop_dead_columns(model, std::move(columns), std::move(rows), model.name());
}

DerivedModel mixture_tracked(const FiniteModel& model, const Partition& ancillary, const Weights& weights) {
  if (ancillary.ground_size() != model.sample_count()) {
    throw Error(ErrorCode::GroundSetMismatch, "partition over " + std::to_string(ancillary.ground_size()) +
                                                  " points for a model with " + std::to_string(model.sample_count()));
  }
  if (weights.size() != ancillary.size()) {
    throw Error(ErrorCode::WeightArityMismatch, std::to_string(weights.size()) + " weights for " +
                                                    std::to_string(ancillary.size()) + " blocks");
  }
  const auto marginal = ancillary_distribution(model, ancillary);
  std::vector<Index> columns(model.sample_count());
  for (std::size_t x = 0; x < columns.size(); ++x) columns[x] = x;
  Matrix rows(model.theta_count());
  for (std::size_t i = 0; i < model.theta_count(); ++i) {
    for (Index x : columns) {
      const std::size_t b = ancillary.block_of(x);
      rows[i].push_back(weights[b] * model.prob(i, x) / marginal[b]);
    }
  }
  return drop_dead_columns(model, std::move(columns), std::move(rows), model.name());
}

}  // namespace detail

FiniteModel condition_on_event(const FiniteModel& model, std::span<const Index> event) {
  return detail::condition_tracked(model, event).model;
}

FiniteModel mixture_model(const FiniteModel& model, const Partition& ancillary, const Weights& weights) {
  return detail::mixture_tracked(model, ancillary, weights).model;
}

std::vector<Rational> ancillary_distribution(const FiniteModel& model, const Partition& ancillary) {
  if (ancillary.ground_size() != model.sample_count()) {
    throw Error(ErrorCode::GroundSetMismatch, "partition does not match the sample space");
  }
  std::vector<Rational> out;
  for (std::size_t b = 0; b < ancillary.size(); ++b) {
    const Rational first = model.event_probability(0, ancillary.block(b));
    for (std::size_t i = 1; i < model.theta_count(); ++i) {
      if (model.event_probability(i, ancillary.block(b)) != first) {
        throw Error(ErrorCode::NotAncillary, "block {" + std::to_string(b) + "} of " + ancillary.str(model.samples()) +
                                                 " has theta-dependent probability");
      }
    }
    out.push_back(first);
  }
  return out;
}

}  // namespace laminal
