#include "hatlab/ordinal_line.hpp"

#include <set>

namespace hatlab {

std::string OrdinalPosition::to_string() const {
  if (front) return "front";
  if (block == 0) return std::to_string(offset);
  std::string s = block == 1 ? "w" : "w*" + std::to_string(block);
  return offset == 0 ? s : s + "+" + std::to_string(offset);
}

Color LazySequence::at(const OrdinalPosition& p) const {
  auto it = exceptions.find(p);
  return it == exceptions.end() ? base : it->second;
}

void LazySequence::normalize() { std::erase_if(exceptions, [&](const auto& kv) { return kv.second == base; }); }

LazySequence add(const LazySequence& x, const LazySequence& y, ColorSpace colors) {
  const Color mu = colors.size;
  LazySequence sum{(x.base + y.base) % mu, {}};
  for (const auto& [p, c] : x.exceptions) sum.exceptions[p] = (c + y.at(p)) % mu;
  for (const auto& [p, c] : y.exceptions) sum.exceptions[p] = (x.at(p) + c) % mu;
  sum.normalize();
  return sum;
}

Color sigma_prime(const LazySequence& seq, ColorSpace colors) {
  const Color mu = colors.size;
  std::uint64_t total = 0;
  for (const auto& [p, c] : seq.exceptions) total += (c % mu + mu - seq.base % mu) % mu;
  return static_cast<Color>(total % mu);
}

Color LazyAssignment::at(const OrdinalPosition& p) const {
  if (p.front) return front.value_or(base);
  auto it = exceptions.find(p);
  return it == exceptions.end() ? base : it->second;
}

void LazyAssignment::normalize() { std::erase_if(exceptions, [&](const auto& kv) { return kv.second == base; }); }

std::vector<OrdinalPosition> LazyAssignment::deviations() const {
  std::vector<OrdinalPosition> out;
  for (const auto& [p, c] : exceptions) {
    if (c != base) out.push_back(p);
  }
  return out;
}

std::string_view to_string(LineStrategy s) {
  switch (s) {
    case LineStrategy::GabayOConnor: return "gabay_oconnor";
    case LineStrategy::ForwardSelector: return "forward_selector";
    case LineStrategy::SumBroadcast: return "sum_broadcast";
  }
  return "unknown";
}

Color LazyGuessRecord::at(const OrdinalPosition& p) const {
  if (p.front) return front.value_or(generic);
  auto it = evaluated.find(p);
  return it == evaluated.end() ? generic : it->second;
}

std::vector<OrdinalPosition> evaluation_points(const LineShape& shape, const LazyAssignment& a) {
  std::set<OrdinalPosition> points;
  if (shape.front_present) points.insert(OrdinalPosition::front_player());
  std::vector<std::uint64_t> past_last(shape.limit_blocks, 2);
  for (std::uint32_t k = 0; k < shape.limit_blocks; ++k) {
    points.insert(OrdinalPosition::ordinal(k, 0));
    points.insert(OrdinalPosition::ordinal(k, 1));
  }
  for (const auto& [p, c] : a.exceptions) {
    points.insert(p);
    points.insert(OrdinalPosition::ordinal(p.block, p.offset + 1));
    if (p.block < shape.limit_blocks) past_last[p.block] = std::max(past_last[p.block], p.offset + 2);
  }
  for (std::uint32_t k = 0; k < shape.limit_blocks; ++k) points.insert(OrdinalPosition::ordinal(k, past_last[k]));
  return {points.begin(), points.end()};
}

namespace {

void check_line(LineStrategy kind, const LineShape& shape, ColorSpace colors, const LazyAssignment& a) {
  if (colors.size == 0 || shape.limit_blocks == 0) throw HatError(ErrorCode::ZeroSize, "empty line or color space");
  const bool wants_front = kind == LineStrategy::SumBroadcast;
  if (shape.front_present != wants_front) {
    throw HatError(ErrorCode::ShapeMismatch, std::string(to_string(kind)) +
                                                 (wants_front ? " needs a front player" : " takes no front player"));
  }
  if (a.front.has_value() != shape.front_present) {
    throw HatError(ErrorCode::ShapeMismatch, "front hat given iff the line has a front player");
  }
  if (!colors.contains(a.base) || (a.front && !colors.contains(*a.front))) {
    throw HatError(ErrorCode::ShapeMismatch, "assignment color out of range");
  }
  for (const auto& [p, c] : a.exceptions) {
    if (p.front || p.block >= shape.limit_blocks) {
      throw HatError(ErrorCode::ShapeMismatch, "exception at " + p.to_string() + " lies outside the line");
    }
    if (!colors.contains(c)) throw HatError(ErrorCode::ShapeMismatch, "exception color out of range");
  }
}

// Hats seen from p under "see all but yourself".
LazySequence all_but(const LazyAssignment& a, const OrdinalPosition& p) {
  LazySequence view = a.ordinal_part();
  view.exceptions.erase(p);
  return view;
}

// Hats seen from p under "see forward".
LazySequence beyond(const LazyAssignment& a, const OrdinalPosition& p) {
  LazySequence view{a.base, {}};
  for (auto it = a.exceptions.upper_bound(p); it != a.exceptions.end(); ++it) view.exceptions.insert(*it);
  return view;
}

// Eventually-base views carry their class in the tail color.
Color tail_of(const LazySequence& view) { return view.base; }

Color gabay_oconnor_guess(const LazyAssignment& a, const OrdinalPosition& p) {
  // Selector: the class of eventually-`tail` sequences maps to constant tail.
  const LazySequence selected{tail_of(all_but(a, p)), {}};
  return selected.at(p);
}

Color forward_selector_guess(const LazyAssignment& a, const OrdinalPosition& p) {
  // Least member of p's class: the seen hats beyond p, tail color up to p.
  const LazySequence seen = beyond(a, p);
  const LazySequence selected{tail_of(seen), seen.exceptions};
  return selected.at(p);
}

}  // namespace

LazyGuessRecord run_lazy(LineStrategy kind, const LineShape& shape, ColorSpace colors, const LazyAssignment& input) {
  check_line(kind, shape, colors, input);
  LazyAssignment a = input;
  a.normalize();
  const Color mu = colors.size;

  LazyGuessRecord record;
  record.generic = a.base;
  for (const OrdinalPosition& p : evaluation_points(shape, a)) {
    if (p.front) {
      record.front = sigma_prime(a.ordinal_part(), colors);
      continue;
    }
    Color guess = 0;
    switch (kind) {
      case LineStrategy::GabayOConnor: guess = gabay_oconnor_guess(a, p); break;
      case LineStrategy::ForwardSelector: guess = forward_selector_guess(a, p); break;
      case LineStrategy::SumBroadcast: {
        // Heard guesses below p, own slot 0, seen hats beyond p.
        LazySequence x = beyond(a, p);
        if (record.generic != x.base) {
          if (p.block != 0) {
            throw HatError(ErrorCode::NotRepresentable, "guesses below " + p.to_string() + " are not eventually base");
          }
          for (std::uint64_t n = 0; n < p.offset; ++n) x.exceptions[OrdinalPosition::ordinal(0, n)] = record.generic;
        }
        for (const auto& [q, g] : record.evaluated) x.exceptions[q] = g;
        x.exceptions[p] = 0;
        x.normalize();
        guess = static_cast<Color>((*record.front + mu - sigma_prime(x, colors)) % mu);
        break;
      }
    }
    record.evaluated[p] = guess;
    if (!a.exceptions.contains(p) && guess != record.generic) record.generic_consistent = false;
  }
  return record;
}

MismatchCensus mismatch_census(const LazyAssignment& input, const LazyGuessRecord& g) {
  LazyAssignment a = input;
  a.normalize();
  MismatchCensus census;
  census.cofinite_correct = g.generic == a.base && g.generic_consistent;

  std::set<OrdinalPosition> checked;
  if (a.front || g.front) checked.insert(OrdinalPosition::front_player());
  for (const auto& [p, c] : g.evaluated) checked.insert(p);
  for (const auto& [p, c] : a.exceptions) checked.insert(p);
  for (const OrdinalPosition& p : checked) {
    if (g.at(p) != a.at(p)) census.incorrect.push_back(p);
  }
  return census;
}

}  // namespace hatlab
