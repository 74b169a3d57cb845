#include "coxinv/enumeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "coxinv/classification.hpp"
#include "coxinv/error.hpp"

namespace coxinv {

EnumerationLimits EnumerationLimits::from_environment() {
  EnumerationLimits limits;
  if (const char* v = std::getenv("COXINV_MAX_ELEMENTS")) {
    char* end = nullptr;
    const auto x = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && x > 0) limits.max_elements = x;
  }
  return limits;
}

std::vector<std::uint64_t> BallEnumeration::layer_sizes() const {
  std::vector<std::uint64_t> out;
  for (const auto& l : layers) out.push_back(l.size());
  return out;
}

std::uint64_t BallEnumeration::size() const {
  std::uint64_t n = 0;
  for (const auto& l : layers) n += l.size();
  return n;
}

namespace {

struct Pending {
  std::vector<std::uint8_t> word;
  Subset descents = 0;
};

using LayerMap = std::unordered_map<std::vector<std::int64_t>, Pending, CoeffsHash>;

struct Current {
  std::vector<std::int64_t> coeffs;
  std::vector<std::uint8_t> word;
  Subset descents;
};

void absorb(LayerMap& into, std::vector<std::int64_t> key, std::vector<std::uint8_t> word, Subset desc) {
  auto [it, inserted] = into.try_emplace(std::move(key));
  if (inserted) {
    it->second.word = std::move(word);
    it->second.descents = desc;
  } else {
    it->second.descents |= desc;
    if (word < it->second.word) it->second.word = std::move(word);
  }
}

void expand_range(const ReflectionRepresentation& rep, const std::vector<Current>& layer, std::size_t lo,
                  std::size_t hi, LayerMap& out) {
  for (std::size_t i = lo; i < hi; ++i) {
    const auto& w = layer[i];
    for (int s = 0; s < rep.rank(); ++s) {
      if (contains(w.descents, s)) continue;
      auto child = w.coeffs;
      rep.right_multiply(child, s);
      auto word = w.word;
      word.push_back(static_cast<std::uint8_t>(s));
      absorb(out, std::move(child), std::move(word), singleton(s));
    }
  }
}

std::vector<int> class_type_of(const std::vector<std::uint8_t>& word, const std::vector<int>& cls,
                               int num_classes) {
  std::vector<int> out(num_classes, 0);
  for (auto s : word) ++out[cls[s]];
  return out;
}

BallEnumeration enumerate(const ReflectionRepresentation& rep, int radius, bool unbounded,
                          const EnumerationLimits& limits) {
  if (radius < 0) fail(ErrorKind::SchemaError, "radius must be non-negative");
  const auto cls = class_index(rep.matrix());
  const int num_classes = *std::max_element(cls.begin(), cls.end()) + 1;

  BallEnumeration ball;
  ball.num_classes = num_classes;
  std::vector<Current> layer{{rep.identity().coeffs, {}, 0}};
  ball.layers.push_back({BallElement{{}, 0, std::vector<int>(num_classes, 0)}});
  std::uint64_t total = 1;

  unsigned threads = limits.threads ? limits.threads : std::max(1u, std::thread::hardware_concurrency());
  if (!limits.parallel) threads = 1;

  for (int k = 1; unbounded || k <= radius; ++k) {
    LayerMap merged;
    merged.reserve(layer.size() * static_cast<std::size_t>(rep.rank()));
    if (threads <= 1 || layer.size() < 64) {
      expand_range(rep, layer, 0, layer.size(), merged);
    } else {
      const std::size_t chunks = std::min<std::size_t>(threads, layer.size());
      std::vector<LayerMap> parts(chunks);
      std::vector<std::thread> pool;
      std::exception_ptr error;
      std::mutex error_mutex;
      for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = layer.size() * c / chunks, hi = layer.size() * (c + 1) / chunks;
        pool.emplace_back([&, lo, hi, c] {
          try {
            expand_range(rep, layer, lo, hi, parts[c]);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      if (error) std::rethrow_exception(error);
      for (auto& part : parts)
        for (auto& [key, p] : part) absorb(merged, key, std::move(p.word), p.descents);
    }
    if (merged.empty()) {
      ball.exhausted = true;
      break;
    }
    total += merged.size();
    if (total > limits.max_elements)
      fail(ErrorKind::ResourceExceeded,
           "ball enumeration exceeds " + std::to_string(limits.max_elements) +
               " elements at length " + std::to_string(k) + "; lower the radius or raise --max-elements");

    std::vector<std::pair<std::vector<std::int64_t>, Pending>> sorted(
        std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end()));
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Current> next;
    std::vector<BallElement> out;
    next.reserve(sorted.size());
    out.reserve(sorted.size());
    for (auto& [key, p] : sorted) {
      out.push_back(BallElement{p.word, p.descents, class_type_of(p.word, cls, num_classes)});
      next.push_back(Current{std::move(key), std::move(p.word), p.descents});
    }
    ball.layers.push_back(std::move(out));
    layer = std::move(next);
    ball.radius = k;
  }
  if (!unbounded) ball.radius = radius;
  return ball;
}

}  // namespace

BallEnumeration ball_enumerate(const ReflectionRepresentation& rep, int radius,
                               const EnumerationLimits& limits) {
  auto ball = enumerate(rep, radius, false, limits);
  // pad so that layers.size() == radius + 1 even when exhausted early
  while (static_cast<int>(ball.layers.size()) <= radius) ball.layers.emplace_back();
  return ball;
}

BallEnumeration enumerate_finite(const ReflectionRepresentation& rep, const EnumerationLimits& limits) {
  if (!is_finite_parabolic(rep.matrix(), full_set(rep.rank())))
    fail(ErrorKind::Internal, "enumerate_finite called on an infinite group");
  auto ball = enumerate(rep, 0, true, limits);
  ball.radius = static_cast<int>(ball.layers.size()) - 1;
  return ball;
}

std::vector<std::uint64_t> SphereCounts::totals() const {
  std::vector<std::uint64_t> out;
  for (const auto& m : by_length) {
    std::uint64_t n = 0;
    for (const auto& [k, v] : m) n += v;
    out.push_back(n);
  }
  return out;
}

SphereCounts sphere_counts(const BallEnumeration& ball) {
  SphereCounts sc;
  sc.radius = ball.radius;
  sc.num_classes = ball.num_classes;
  sc.exhausted = ball.exhausted;
  sc.source = "ball-enumeration";
  for (const auto& layer : ball.layers) {
    std::map<std::vector<int>, std::uint64_t> m;
    for (const auto& e : layer) ++m[e.class_type];
    sc.by_length.push_back(std::move(m));
  }
  return sc;
}

SphereCounts right_angled_sphere_counts(const CoxeterMatrix& M, int radius) {
  if (!M.right_angled()) fail(ErrorKind::NotRightAngled, "descent transfer needs a right-angled system");
  if (radius < 0) fail(ErrorKind::SchemaError, "radius must be non-negative");
  const int n = M.rank();
  const auto cls = class_index(M);
  const int num_classes = *std::max_element(cls.begin(), cls.end()) + 1;

  using State = std::pair<Subset, std::vector<int>>;
  std::map<State, std::uint64_t> cur{{{0, std::vector<int>(num_classes, 0)}, 1}};
  SphereCounts sc;
  sc.num_classes = num_classes;
  sc.radius = radius;
  sc.source = "descent-transfer";
  sc.by_length.push_back({{std::vector<int>(num_classes, 0), 1}});
  for (int k = 1; k <= radius; ++k) {
    std::map<State, std::uint64_t> next;
    for (const auto& [state, count] : cur) {
      const auto& [D, type] = state;
      for (int s = 0; s < n; ++s) {
        if (contains(D, s)) continue;
        Subset D2 = singleton(s);
        for (int d : members(D))
          if (M.commute(d, s)) D2 |= singleton(d);
        if (31 - std::countl_zero(D2) != s) continue;  // s must be the largest descent
        auto t2 = type;
        ++t2[cls[s]];
        auto& slot = next[{D2, std::move(t2)}];
        if (__builtin_add_overflow(slot, count, &slot))
          fail(ErrorKind::ResourceExceeded, "sphere count overflows 64 bits");
      }
    }
    std::map<std::vector<int>, std::uint64_t> layer;
    for (const auto& [state, count] : next) layer[state.second] += count;
    sc.by_length.push_back(std::move(layer));
    cur = std::move(next);
    if (cur.empty()) {
      sc.exhausted = true;
      for (int j = k + 1; j <= radius; ++j) sc.by_length.emplace_back();
      break;
    }
  }
  return sc;
}

}  // namespace coxinv
