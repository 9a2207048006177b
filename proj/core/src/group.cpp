#include "koopnet/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "koopnet/errors.hpp"

namespace koopnet {

namespace {

std::vector<Element> compute_inverses(const FiniteGroup& group) {
  std::vector<Element> inv(group.order());
  for (Element g = 0; g < group.order(); ++g) {
    for (Element h = 0; h < group.order(); ++h) {
      if (group.product(g, h) == group.identity()) {
        inv[g] = h;
        break;
      }
    }
  }
  return inv;
}

std::string triple_message(Element g, Element h, Element k, Element lhs, Element rhs) {
  std::ostringstream os;
  os << "associativity fails for (g,h,k) = (" << g << "," << h << "," << k << "): (gh)k = " << lhs
     << " but g(hk) = " << rhs;
  return os.str();
}

void check_triple(const FiniteGroup& G, Element g, Element h, Element k) {
  const Element lhs = G.product(G.product(g, h), k);
  const Element rhs = G.product(g, G.product(h, k));
  if (lhs != rhs) throw GroupAxiomError(triple_message(g, h, k, lhs, rhs));
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (Element g = 0; g < order_; ++g)
    for (Element h = g + 1; h < order_; ++h)
      if (product(g, h) != product(h, g)) return false;
  return true;
}

FiniteGroup build_cyclic(std::size_t n) {
  if (n == 0) throw InvalidParameterError("cyclic group order must be at least 1");
  FiniteGroup G;
  G.order_ = n;
  G.identity_ = 0;
  G.cayley_.resize(n * n);
  for (Element g = 0; g < n; ++g)
    for (Element h = 0; h < n; ++h) G.cayley_[g * n + h] = (g + h) % n;
  G.inverse_.resize(n);
  for (Element g = 0; g < n; ++g) G.inverse_[g] = (n - g) % n;
  G.generators_ = {n > 1 ? Element{1} : Element{0}};
  return G;
}

FiniteGroup build_symmetric(std::size_t n) {
  if (n == 0) throw InvalidParameterError("symmetric group degree must be at least 1");
  if (n > 6) throw SizeLimitError("symmetric group degree " + std::to_string(n) + " exceeds limit 6");

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<std::size_t>, Element> index;
  for (Element i = 0; i < perms.size(); ++i) index.emplace(perms[i], i);

  FiniteGroup G;
  G.order_ = perms.size();
  G.identity_ = 0;
  G.cayley_.resize(G.order_ * G.order_);
  std::vector<std::size_t> gh(n);
  for (Element g = 0; g < G.order_; ++g) {
    for (Element h = 0; h < G.order_; ++h) {
      for (std::size_t i = 0; i < n; ++i) gh[i] = perms[g][perms[h][i]];
      G.cayley_[g * G.order_ + h] = index.at(gh);
    }
  }
  G.inverse_ = compute_inverses(G);

  if (n == 1) {
    G.generators_ = {0};
  } else {
    std::vector<std::size_t> transposition(n), cycle(n);
    std::iota(transposition.begin(), transposition.end(), 0);
    std::swap(transposition[0], transposition[1]);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    G.generators_ = {index.at(transposition)};
    if (n > 2) G.generators_.push_back(index.at(cycle));
  }
  return G;
}

FiniteGroup build_from_cayley(const std::vector<std::vector<Element>>& table) {
  const std::size_t n = table.size();
  if (n == 0) throw StructuralError("Cayley table is empty");
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n) {
      throw StructuralError("Cayley table row " + std::to_string(r) + " has " +
                            std::to_string(table[r].size()) + " entries, expected " +
                            std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (table[r][c] >= n) {
        throw StructuralError("Cayley entry [" + std::to_string(r) + "][" + std::to_string(c) +
                              "] = " + std::to_string(table[r][c]) + " out of range");
      }
    }
  }

  FiniteGroup G;
  G.order_ = n;
  G.cayley_.resize(n * n);
  for (std::size_t r = 0; r < n; ++r)
    std::copy(table[r].begin(), table[r].end(), G.cayley_.begin() + static_cast<std::ptrdiff_t>(r * n));

  bool found = false;
  for (Element e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = G.product(e, x) == x && G.product(x, e) == x;
    if (ok) {
      G.identity_ = e;
      found = true;
    }
  }
  if (!found) throw StructuralError("Cayley table has no two-sided identity element");

  std::vector<char> seen(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t c = 0; c < n; ++c) {
      if (seen[G.product(r, c)]++) {
        throw GroupAxiomError("row " + std::to_string(r) + " repeats element " +
                              std::to_string(G.product(r, c)));
      }
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[G.product(r, c)]++) {
        throw GroupAxiomError("column " + std::to_string(c) + " repeats element " +
                              std::to_string(G.product(r, c)));
      }
    }
  }

  G.inverse_ = compute_inverses(G);
  G.generators_ = {G.identity_};
  check_group_axioms(G);
  G.generators_ = greedy_generators(G);
  return G;
}

std::vector<Element> greedy_generators(const FiniteGroup& group) {
  const std::size_t n = group.order();
  std::vector<char> in_subgroup(n, 0);
  std::vector<Element> members{group.identity()};
  in_subgroup[group.identity()] = 1;
  std::vector<Element> gens;

  for (Element candidate = 0; candidate < n; ++candidate) {
    if (in_subgroup[candidate]) continue;
    gens.push_back(candidate);
    // closure under right multiplication by the generators
    std::vector<Element> frontier = members;
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (Element m : frontier) {
        for (Element s : gens) {
          const Element p = group.product(m, s);
          if (!in_subgroup[p]) {
            in_subgroup[p] = 1;
            members.push_back(p);
            next.push_back(p);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  if (gens.empty()) gens.push_back(group.identity());
  return gens;
}

void check_group_axioms(const FiniteGroup& group, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = group.order();
  const Element e = group.identity();
  for (Element g = 0; g < n; ++g) {
    if (group.product(e, g) != g || group.product(g, e) != g)
      throw GroupAxiomError("identity " + std::to_string(e) + " is not a unit for " + std::to_string(g));
    const Element gi = group.inverse(g);
    if (group.product(g, gi) != e || group.product(gi, g) != e)
      throw GroupAxiomError("element " + std::to_string(g) + " has no two-sided inverse");
  }
  if (n <= kExhaustiveOrderLimit) {
    for (Element g = 0; g < n; ++g)
      for (Element h = 0; h < n; ++h)
        for (Element k = 0; k < n; ++k) check_triple(group, g, h, k);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Element> pick(0, n - 1);
    for (std::size_t i = 0; i < samples; ++i) check_triple(group, pick(rng), pick(rng), pick(rng));
  }
}

GAction::GAction(std::shared_ptr<const FiniteGroup> group, std::size_t num_points,
                 std::vector<std::vector<Point>> table, Point origin)
    : group_(std::move(group)), num_points_(num_points), origin_(origin) {
  if (!group_) throw InvalidParameterError("action requires a group");
  if (num_points_ == 0) throw InvalidParameterError("action requires at least one point");
  if (origin_ >= num_points_) throw InvalidParameterError("origin out of range");
  const std::size_t n = group_->order();
  if (table.size() != n) {
    throw StructuralError("action table has " + std::to_string(table.size()) + " rows, expected " +
                          std::to_string(n));
  }
  table_.resize(n * num_points_);
  std::vector<char> seen(num_points_);
  for (Element g = 0; g < n; ++g) {
    if (table[g].size() != num_points_) {
      throw StructuralError("action row " + std::to_string(g) + " has " +
                            std::to_string(table[g].size()) + " entries, expected " +
                            std::to_string(num_points_));
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Point x = 0; x < num_points_; ++x) {
      const Point y = table[g][x];
      if (y >= num_points_) {
        throw StructuralError("action entry [" + std::to_string(g) + "][" + std::to_string(x) +
                              "] = " + std::to_string(y) + " out of range");
      }
      if (seen[y]++)
        throw GroupAxiomError("action of element " + std::to_string(g) + " is not a permutation");
      table_[g * num_points_ + x] = y;
    }
  }
  const Element e = group_->identity();
  for (Point x = 0; x < num_points_; ++x) {
    if (act(e, x) != x)
      throw GroupAxiomError("identity moves point " + std::to_string(x));
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      const Element gh = group_->product(g, h);
      for (Point x = 0; x < num_points_; ++x) {
        if (act(g, act(h, x)) != act(gh, x)) {
          throw GroupAxiomError("compatibility fails for (g,h,x) = (" + std::to_string(g) + "," +
                                std::to_string(h) + "," + std::to_string(x) + ")");
        }
      }
    }
  }
}

bool GAction::is_transitive() const {
  std::vector<char> hit(num_points_, 0);
  for (Element g = 0; g < group_->order(); ++g) hit[act(g, origin_)] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

GAction regular_action(std::shared_ptr<const FiniteGroup> group) {
  const std::size_t n = group->order();
  std::vector<std::vector<Point>> table(n, std::vector<Point>(n));
  for (Element g = 0; g < n; ++g)
    for (Element x = 0; x < n; ++x) table[g][x] = group->product(g, x);
  const Point origin = group->identity();
  return GAction(std::move(group), n, std::move(table), origin);
}

GAction trivial_action(std::shared_ptr<const FiniteGroup> group, std::size_t num_points) {
  std::vector<Point> row(num_points);
  std::iota(row.begin(), row.end(), 0);
  std::vector<std::vector<Point>> table(group->order(), row);
  return GAction(std::move(group), num_points, std::move(table), 0);
}

double InvariantMeasure::total() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

bool InvariantMeasure::is_invariant_under(const GAction& action) const {
  if (weights.size() != action.num_points()) return false;
  for (Element g = 0; g < action.group().order(); ++g)
    for (Point x = 0; x < action.num_points(); ++x)
      if (weights[action.act(g, x)] != weights[x]) return false;
  return true;
}

InvariantMeasure counting_measure(std::size_t size, MeasureSide side) {
  if (size == 0) throw InvalidParameterError("counting measure needs at least one point");
  return InvariantMeasure{std::vector<double>(size, 1.0), side};
}

}  // namespace koopnet
