#include "vill/measure.hpp"

#include "vill/errors.hpp"

#include <algorithm>

namespace vill {

Int atom_cap() { return Int(1) << 20; }

Measure Measure::dirac(int alphabet, Word atom) {
  if (alphabet < 1) throw shape_error("alphabet must have at least one letter");
  for (Letter x : atom)
    if (x < 0 || x >= alphabet) throw shape_error("letter out of range");
  Measure m;
  m.kind_ = Kind::Dirac;
  m.alphabet_ = alphabet;
  m.length_ = static_cast<Eigen::Index>(atom.size());
  m.atom_ = std::move(atom);
  return m;
}

Measure Measure::dense(int alphabet, Eigen::Index length, std::map<Word, Rational> atoms) {
  if (alphabet < 1) throw shape_error("alphabet must have at least one letter");
  Rational mass = 0;
  for (auto it = atoms.begin(); it != atoms.end();) {
    if (static_cast<Eigen::Index>(it->first.size()) != length)
      throw shape_error("atom word length mismatch");
    for (Letter x : it->first)
      if (x < 0 || x >= alphabet) throw shape_error("letter out of range");
    if (it->second < 0) throw shape_error("negative mass");
    mass += it->second;
    if (it->second == 0)
      it = atoms.erase(it);
    else
      ++it;
  }
  if (mass != 1) throw shape_error("total mass must be exactly 1, got " + format_rational(mass));
  if (atoms.size() == 1 && atoms.begin()->second == 1)
    return dirac(alphabet, atoms.begin()->first);
  Measure m;
  m.kind_ = Kind::Dense;
  m.alphabet_ = alphabet;
  m.length_ = length;
  m.atoms_ = std::move(atoms);
  return m;
}

Measure Measure::product(std::vector<Measure> factors) {
  if (factors.empty()) throw shape_error("product needs at least one factor");
  if (factors.size() == 1) return std::move(factors[0]);
  Measure m;
  m.kind_ = Kind::Product;
  m.alphabet_ = factors[0].alphabet();
  m.length_ = 0;
  for (const auto& f : factors) {
    if (f.alphabet() != m.alphabet_) throw shape_error("product factors over different alphabets");
    m.length_ += f.length();
  }
  m.factors_ = std::move(factors);
  return m;
}

Measure Measure::uniform(int alphabet, Eigen::Index length) {
  if (length < 1) throw shape_error("uniform measure needs positive length");
  std::map<Word, Rational> single;
  for (Letter x = 0; x < alphabet; ++x) single[{x}] = Rational(1, alphabet);
  Measure one = dense(alphabet, 1, std::move(single));
  if (length == 1) return one;
  std::vector<Measure> factors(static_cast<std::size_t>(length), one);
  return product(std::move(factors));
}

bool Measure::is_point_mass() const {
  switch (kind_) {
    case Kind::Dirac: return true;
    case Kind::Dense: return atoms_.size() == 1;
    case Kind::Product:
      return std::all_of(factors_.begin(), factors_.end(),
                         [](const Measure& f) { return f.is_point_mass(); });
  }
  return false;
}

Word Measure::point_mass_atom() const {
  switch (kind_) {
    case Kind::Dirac: return atom_;
    case Kind::Dense:
      if (atoms_.size() != 1) throw shape_error("not a point mass");
      return atoms_.begin()->first;
    case Kind::Product: {
      Word out;
      for (const auto& f : factors_) {
        Word part = f.point_mass_atom();
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
  }
  throw shape_error("not a point mass");
}

Int Measure::support_bound() const {
  switch (kind_) {
    case Kind::Dirac: return 1;
    case Kind::Dense: return Int(atoms_.size());
    case Kind::Product: {
      Int bound = 1;
      for (const auto& f : factors_) bound *= f.support_bound();
      return bound;
    }
  }
  return 0;
}

Rational Measure::point_mass(const Word& word) const {
  if (static_cast<Eigen::Index>(word.size()) != length_) throw shape_error("word length mismatch");
  switch (kind_) {
    case Kind::Dirac: return word == atom_ ? Rational(1) : Rational(0);
    case Kind::Dense: {
      auto it = atoms_.find(word);
      return it == atoms_.end() ? Rational(0) : it->second;
    }
    case Kind::Product: {
      Rational mass = 1;
      std::size_t offset = 0;
      for (const auto& f : factors_) {
        Word part(word.begin() + static_cast<std::ptrdiff_t>(offset),
                  word.begin() + static_cast<std::ptrdiff_t>(offset + static_cast<std::size_t>(f.length())));
        mass *= f.point_mass(part);
        if (mass == 0) return mass;
        offset += static_cast<std::size_t>(f.length());
      }
      return mass;
    }
  }
  return Rational(0);
}

std::set<Eigen::Index> Measure::internal_cuts() const {
  std::set<Eigen::Index> cuts;
  switch (kind_) {
    case Kind::Dirac:
      for (Eigen::Index c = 1; c < length_; ++c) cuts.insert(c);
      break;
    case Kind::Dense:
      if (atoms_.size() == 1)
        for (Eigen::Index c = 1; c < length_; ++c) cuts.insert(c);
      break;
    case Kind::Product: {
      Eigen::Index offset = 0;
      for (const auto& f : factors_) {
        for (Eigen::Index c : f.internal_cuts()) cuts.insert(offset + c);
        offset += f.length();
        if (offset < length_) cuts.insert(offset);
      }
      break;
    }
  }
  return cuts;
}

Measure marginal_block(const Measure& measure, const std::vector<Eigen::Index>& coords) {
  if (coords.empty()) throw shape_error("marginal needs at least one coordinate");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= measure.length()) throw shape_error("coordinate out of range");
    if (i > 0 && coords[i] <= coords[i - 1])
      throw shape_error("coordinates must be strictly increasing");
  }
  switch (measure.kind()) {
    case Measure::Kind::Dirac: {
      Word sub;
      sub.reserve(coords.size());
      for (Eigen::Index c : coords) sub.push_back(measure.dirac_atom()[static_cast<std::size_t>(c)]);
      return Measure::dirac(measure.alphabet(), std::move(sub));
    }
    case Measure::Kind::Dense: {
      std::map<Word, Rational> projected;
      for (const auto& [word, mass] : measure.dense_atoms()) {
        Word sub;
        sub.reserve(coords.size());
        for (Eigen::Index c : coords) sub.push_back(word[static_cast<std::size_t>(c)]);
        projected[std::move(sub)] += mass;
      }
      return Measure::dense(measure.alphabet(), static_cast<Eigen::Index>(coords.size()),
                            std::move(projected));
    }
    case Measure::Kind::Product: {
      std::vector<Measure> kept;
      Eigen::Index offset = 0;
      std::size_t next = 0;
      for (const auto& f : measure.factors()) {
        std::vector<Eigen::Index> local;
        while (next < coords.size() && coords[next] < offset + f.length()) {
          local.push_back(coords[next] - offset);
          ++next;
        }
        if (!local.empty()) kept.push_back(marginal_block(f, local));
        offset += f.length();
      }
      return Measure::product(std::move(kept));
    }
  }
  throw shape_error("unreachable");
}

std::map<Word, Rational> enumerate_atoms(const Measure& measure) {
  if (measure.support_bound() > atom_cap())
    throw cap_exceeded("support bound " + measure.support_bound().str() +
                       " exceeds the atom cap; keep product or point-mass form");
  switch (measure.kind()) {
    case Measure::Kind::Dirac: return {{measure.dirac_atom(), Rational(1)}};
    case Measure::Kind::Dense: return measure.dense_atoms();
    case Measure::Kind::Product: {
      std::map<Word, Rational> acc{{Word{}, Rational(1)}};
      for (const auto& f : measure.factors()) {
        std::map<Word, Rational> factor_atoms = enumerate_atoms(f);
        std::map<Word, Rational> next;
        for (const auto& [prefix, mass] : acc)
          for (const auto& [word, fmass] : factor_atoms) {
            Word joined = prefix;
            joined.insert(joined.end(), word.begin(), word.end());
            next[std::move(joined)] = mass * fmass;
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  throw shape_error("unreachable");
}

bool measure_equal(const Measure& a, const Measure& b) {
  if (a.alphabet() != b.alphabet() || a.length() != b.length()) return false;
  if (a.is_point_mass() || b.is_point_mass()) {
    if (!a.is_point_mass() || !b.is_point_mass()) return false;
    return a.point_mass_atom() == b.point_mass_atom();
  }
  // Shared cut points factorize both sides; compare segment by segment.
  std::set<Eigen::Index> cuts_a = a.internal_cuts();
  std::set<Eigen::Index> cuts_b = b.internal_cuts();
  std::vector<Eigen::Index> shared{0};
  for (Eigen::Index c : cuts_a)
    if (cuts_b.count(c)) shared.push_back(c);
  shared.push_back(a.length());

  for (std::size_t s = 0; s + 1 < shared.size(); ++s) {
    std::vector<Eigen::Index> coords;
    for (Eigen::Index c = shared[s]; c < shared[s + 1]; ++c) coords.push_back(c);
    Measure ma = marginal_block(a, coords);
    Measure mb = marginal_block(b, coords);
    if (ma.is_point_mass() != mb.is_point_mass()) return false;
    if (ma.is_point_mass()) {
      if (ma.point_mass_atom() != mb.point_mass_atom()) return false;
      continue;
    }
    if (enumerate_atoms(ma) != enumerate_atoms(mb)) return false;
  }
  return true;
}

Measure convex_combination(const std::vector<Measure>& measures, const RatVector& weights) {
  if (measures.empty() || static_cast<Eigen::Index>(measures.size()) != weights.size())
    throw shape_error("need one weight per measure");
  Rational total = 0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) < 0) throw shape_error("negative weight");
    total += weights(i);
  }
  if (total != 1) throw shape_error("weights must sum to 1");
  for (const auto& m : measures)
    if (m.alphabet() != measures[0].alphabet() || m.length() != measures[0].length())
      throw shape_error("mixed shapes in convex combination");

  // Zero-weight entries do not contribute; a single survivor passes through.
  std::vector<std::size_t> active;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (weights(i) > 0) active.push_back(static_cast<std::size_t>(i));
  if (active.size() == 1) return measures[active[0]];

  bool all_equal = true;
  for (std::size_t i = 1; i < active.size() && all_equal; ++i)
    all_equal = measure_equal(measures[active[0]], measures[active[i]]);
  if (all_equal) return measures[active[0]];

  std::map<Word, Rational> acc;
  for (std::size_t i : active)
    for (const auto& [word, mass] : enumerate_atoms(measures[i]))
      acc[word] += weights(static_cast<Eigen::Index>(i)) * mass;
  return Measure::dense(measures[0].alphabet(), measures[0].length(), std::move(acc));
}

}  // namespace vill
