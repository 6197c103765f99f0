#include <affinelag/twisted_cohomology.hpp>

#include <algorithm>
#include <stdexcept>

namespace affinelag {

std::string to_string(Ring ring) { return ring == Ring::Z ? "Z" : "Q"; }

// ---------------------------------------------------------------------------
// Cochains

TwistedCochain::TwistedCochain(std::shared_ptr<const LocalSystem> system, int degree, Ring ring)
    : system_(std::move(system)), degree_(degree), ring_(ring) {
  if (!system_) throw std::invalid_argument("TwistedCochain: null system");
  values_.resize(system_->base().count(degree_) * system_->rank());
}

TwistedCochain::TwistedCochain(std::shared_ptr<const LocalSystem> system, int degree, Ring ring, RationalVector values)
    : system_(std::move(system)), degree_(degree), ring_(ring), values_(std::move(values)) {
  if (!system_) throw std::invalid_argument("TwistedCochain: null system");
  if (values_.size() != system_->base().count(degree_) * system_->rank())
    throw std::invalid_argument("TwistedCochain: wrong number of values");
  if (ring_ == Ring::Z && !is_integral(values_))
    throw std::invalid_argument("TwistedCochain: integral cochain with non-integer value");
}

std::span<const Rational> TwistedCochain::value(std::size_t simplex_index) const {
  const std::size_t n = rank();
  if (simplex_index >= simplex_count()) throw std::out_of_range("TwistedCochain::value");
  return {values_.data() + simplex_index * n, n};
}

std::span<const Rational> TwistedCochain::value(const Simplex& s) const {
  if (static_cast<int>(s.size()) != degree_ + 1) throw std::invalid_argument("TwistedCochain: simplex of wrong dimension");
  return value(system_->base().index_of(s));
}

void TwistedCochain::set(std::size_t simplex_index, std::span<const Rational> v) {
  const std::size_t n = rank();
  if (simplex_index >= simplex_count()) throw std::out_of_range("TwistedCochain::set");
  if (v.size() != n) throw std::invalid_argument("TwistedCochain: value length differs from the rank");
  if (ring_ == Ring::Z && !is_integral(v)) throw std::invalid_argument("TwistedCochain: integral cochain with non-integer value");
  std::copy(v.begin(), v.end(), values_.begin() + static_cast<std::ptrdiff_t>(simplex_index * n));
}

void TwistedCochain::set(const Simplex& s, std::span<const Rational> v) {
  if (static_cast<int>(s.size()) != degree_ + 1) throw std::invalid_argument("TwistedCochain: simplex of wrong dimension");
  set(system_->base().index_of(s), v);
}

bool TwistedCochain::is_zero() const {
  for (const auto& v : values_)
    if (v != 0) return false;
  return true;
}

TwistedCochain TwistedCochain::with_ring(Ring ring) const {
  return TwistedCochain(system_, degree_, ring, values_);
}

void TwistedCochain::check_compatible(const TwistedCochain& other) const {
  if (degree_ != other.degree_ || ring_ != other.ring_ || !same_system(*system_, *other.system_))
    throw std::invalid_argument("TwistedCochain: incompatible operands");
}

// Over Z every denominator is 1, so sums and integer multiples act on numerators.
TwistedCochain& TwistedCochain::operator+=(const TwistedCochain& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (other.values_[i] == 0) continue;
    if (ring_ == Ring::Z)
      mpz_add(mpq_numref(values_[i].get_mpq_t()), mpq_numref(values_[i].get_mpq_t()),
              mpq_numref(other.values_[i].get_mpq_t()));
    else
      values_[i] += other.values_[i];
  }
  return *this;
}

TwistedCochain& TwistedCochain::operator-=(const TwistedCochain& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (other.values_[i] == 0) continue;
    if (ring_ == Ring::Z)
      mpz_sub(mpq_numref(values_[i].get_mpq_t()), mpq_numref(values_[i].get_mpq_t()),
              mpq_numref(other.values_[i].get_mpq_t()));
    else
      values_[i] -= other.values_[i];
  }
  return *this;
}

TwistedCochain operator*(const Rational& s, TwistedCochain c) {
  if (c.ring_ == Ring::Z && s.get_den() != 1) throw std::invalid_argument("TwistedCochain: non-integer scalar over Z");
  if (s.get_den() == 1) {
    for (auto& v : c.values_)
      if (v != 0) {
        mpz_mul(mpq_numref(v.get_mpq_t()), mpq_numref(v.get_mpq_t()), mpq_numref(s.get_mpq_t()));
        if (c.ring_ == Ring::Q) v.canonicalize();
      }
    return c;
  }
  for (auto& v : c.values_) v *= s;
  return c;
}

bool operator==(const TwistedCochain& a, const TwistedCochain& b) {
  return a.degree_ == b.degree_ && a.ring_ == b.ring_ && same_system(*a.system_, *b.system_) && a.values_ == b.values_;
}

// ---------------------------------------------------------------------------
// Coboundary

SparseIntMatrix coboundary_matrix(const LocalSystem& system, int p) {
  const auto& base = system.base();
  const std::size_t n = system.rank();
  SparseIntMatrix m(base.count(p + 1) * n, base.count(p) * n);
  if (p < 0) return m;
  const auto& targets = base.simplices(p + 1);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Simplex& s = targets[t];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      const std::size_t f = base.index_of(face);
      if (i == 0) {
        const IntMatrix& rho = system.transport(s[0], s[1]);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            if (rho(r, c) != 0) m.add(t * n + r, f * n + c, rho(r, c));
      } else {
        const int sign = i % 2 ? -1 : 1;
        for (std::size_t r = 0; r < n; ++r) m.add(t * n + r, f * n + r, sign);
      }
    }
  }
  m.normalize();
  return m;
}

namespace {

// Index of the edge [v0, v1] of the p-simplex `index` (p >= 1).
std::size_t leading_edge(const SimplicialComplex& base, int p, std::size_t index) {
  for (; p > 1; --p) index = base.face(p, index, static_cast<std::size_t>(p));
  return index;
}

}  // namespace

TwistedCochain coboundary(const TwistedCochain& c) {
  const auto& base = c.system().base();
  const std::size_t n = c.rank();
  TwistedCochain out(c.system_ptr(), c.degree() + 1, c.ring());
  if (c.degree() < 0) return out;
  const auto& targets = base.simplices(c.degree() + 1);
  // Integral cochains accumulate numerators only.
  const bool integral = c.ring() == Ring::Z;
  IntVector num(n);
  RationalVector acc(n);
  Rational term;
  auto add = [&](std::size_t r, const Rational& v, const Integer& m) {
    if (integral) {
      mpz_addmul(num[r].get_mpz_t(), m.get_mpz_t(), mpq_numref(v.get_mpq_t()));
    } else if (m == 1) {
      acc[r] += v;
    } else if (m == -1) {
      acc[r] -= v;
    } else {
      term = v;
      term *= m;
      acc[r] += term;
    }
  };
  const Integer plus(1), minus(-1);
  const int q = c.degree() + 1;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (integral)
      for (auto& x : num) x = 0;
    else
      for (auto& x : acc) x = 0;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(q); ++i) {
      auto v = c.value(base.face(q, t, i));
      if (i == 0) {
        const IntMatrix& rho = c.system().transport(leading_edge(base, q, t));
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t k = 0; k < n; ++k)
            if (rho(r, k) != 0 && v[k] != 0) add(r, v[k], rho(r, k));
      } else {
        for (std::size_t r = 0; r < n; ++r)
          if (v[r] != 0) add(r, v[r], i % 2 ? minus : plus);
      }
    }
    if (integral)
      for (std::size_t r = 0; r < n; ++r) acc[r] = num[r];
    out.set(t, acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Class coordinates

bool ClassCoordinates::is_zero() const {
  for (const auto& v : free)
    if (v != 0) return false;
  for (const auto& t : torsion)
    if (t != 0) return false;
  return true;
}

ClassCoordinates ClassCoordinates::operator-() const {
  ClassCoordinates out = *this;
  for (auto& v : out.free) v = -v;
  for (std::size_t i = 0; i < out.torsion.size(); ++i) {
    Integer r = -out.torsion[i];
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), out.torsion_orders[i].get_mpz_t());
    out.torsion[i] = r;
  }
  return out;
}

ClassCoordinates operator+(const ClassCoordinates& a, const ClassCoordinates& b) {
  if (a.ring != b.ring || a.free.size() != b.free.size() || a.torsion_orders != b.torsion_orders)
    throw std::invalid_argument("ClassCoordinates: shapes differ");
  ClassCoordinates out = a;
  for (std::size_t i = 0; i < out.free.size(); ++i) out.free[i] += b.free[i];
  for (std::size_t i = 0; i < out.torsion.size(); ++i) {
    Integer r = a.torsion[i] + b.torsion[i];
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), out.torsion_orders[i].get_mpz_t());
    out.torsion[i] = r;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cohomology groups
//
// With B = delta_{p-1} and A = delta_p, write U B V = S. In the basis given by
// the rows of U the image of B is spanned by d_i e_i, and A U^{-1} vanishes on
// the first rank(B) coordinates. The cocycles are then the kernel of the
// remaining block A'', whose Smith form supplies the free generators.

namespace detail {

struct CohomologyData {
  std::shared_ptr<const LocalSystem> system;
  int degree = 0;
  Ring ring = Ring::Z;
  std::size_t cochain_dimension = 0;
  SparseSmithForm lower;  // Smith form of delta_{p-1}
  SparseSmithForm upper;  // Smith form of the reduced delta_p block
  IntVector torsion;
  std::vector<std::size_t> torsion_positions;
  std::size_t free_rank = 0;
  std::vector<TwistedCochain> basis;
};

}  // namespace detail

namespace {

void require_cocycle(const TwistedCochain& c) {
  if (!coboundary(c).is_zero()) throw std::invalid_argument("cochain is not a cocycle");
}

SparseSmithForm lower_form(const LocalSystem& system, int p) {
  return sparse_smith_form(coboundary_matrix(system, p - 1));
}

// Integral vector N * values with N the common denominator.
IntVector clear_denominators(const RationalVector& values, Integer& denominator) {
  denominator = common_denominator(values);
  IntVector out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Rational scaled = values[i] * denominator;
    out[i] = scaled.get_num();
  }
  return out;
}

std::optional<TwistedCochain> witness_from_lower(const SparseSmithForm& lower, const TwistedCochain& c, Ring ring) {
  Integer denominator;
  IntVector y = clear_denominators(c.values(), denominator);
  lower.left.apply(std::span<Integer>(y));
  const std::size_t r = lower.rank();
  for (std::size_t i = r; i < y.size(); ++i)
    if (y[i] != 0) return std::nullopt;
  RationalVector z(lower.cols);
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& d = lower.invariant_factors[i];
    if (ring == Ring::Z && !mpz_divisible_p(y[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    z[i] = Rational(y[i], d * denominator);
    z[i].canonicalize();
  }
  lower.apply_right(std::span<Rational>(z));
  return TwistedCochain(c.system_ptr(), c.degree() - 1, ring, std::move(z));
}

}  // namespace

CohomologyGroup cohomology(std::shared_ptr<const LocalSystem> system, int p, Ring ring) {
  if (!system) throw std::invalid_argument("cohomology: null system");
  auto data = std::make_shared<detail::CohomologyData>();
  data->system = system;
  data->degree = p;
  data->ring = ring;
  const std::size_t m = system->base().count(p) * system->rank();
  data->cochain_dimension = m;

  data->lower = lower_form(*system, p);
  const std::size_t rank_lower = data->lower.rank();

  // A U^{-1}, column by column.
  SparseIntMatrix upper_matrix = coboundary_matrix(*system, p);
  const std::size_t l = upper_matrix.rows();
  SparseIntMatrix columns = upper_matrix.transpose();
  std::vector<SparseVector> cols(m);
  for (std::size_t c = 0; c < m; ++c) cols[c] = std::move(columns.row(c));
  data->lower.left.apply_inverse_on_right(cols);
  for (std::size_t c = 0; c < rank_lower; ++c)
    if (!cols[c].empty()) throw std::logic_error("cohomology: delta o delta != 0 for this system");
  SparseIntMatrix reduced(m - rank_lower, l);
  for (std::size_t c = rank_lower; c < m; ++c)
    for (auto& e : cols[c]) reduced.add(c - rank_lower, e.index, e.value);
  reduced.normalize();
  data->upper = sparse_smith_form(reduced.transpose(), {.track_left = false, .track_right = true});
  const std::size_t rank_upper = data->upper.rank();
  data->free_rank = m - rank_lower - rank_upper;

  if (ring == Ring::Z)
    for (std::size_t i = 0; i < rank_lower; ++i)
      if (data->lower.invariant_factors[i] != 1) {
        data->torsion.push_back(data->lower.invariant_factors[i]);
        data->torsion_positions.push_back(i);
      }

  for (std::size_t k = 0; k < data->free_rank; ++k) {
    IntVector tail(m - rank_lower);
    tail[rank_upper + k] = 1;
    data->upper.apply_right(std::span<Integer>(tail));
    IntVector y(m);
    std::copy(tail.begin(), tail.end(), y.begin() + static_cast<std::ptrdiff_t>(rank_lower));
    data->lower.left.apply_inverse(std::span<Integer>(y));
    data->basis.emplace_back(system, p, ring, RationalVector(y.begin(), y.end()));
  }
  for (std::size_t pos : data->torsion_positions) {
    IntVector y(m);
    y[pos] = 1;
    data->lower.left.apply_inverse(std::span<Integer>(y));
    data->basis.emplace_back(system, p, ring, RationalVector(y.begin(), y.end()));
  }

  CohomologyGroup group;
  group.data_ = std::move(data);
  return group;
}

int CohomologyGroup::degree() const { return data_->degree; }
Ring CohomologyGroup::ring() const { return data_->ring; }
const LocalSystem& CohomologyGroup::system() const { return *data_->system; }
const std::shared_ptr<const LocalSystem>& CohomologyGroup::system_ptr() const { return data_->system; }
std::size_t CohomologyGroup::free_rank() const { return data_->free_rank; }
const IntVector& CohomologyGroup::torsion() const { return data_->torsion; }
const std::vector<TwistedCochain>& CohomologyGroup::basis_cocycles() const { return data_->basis; }

namespace {
void check_membership(const detail::CohomologyData& data, const TwistedCochain& c) {
  if (c.degree() != data.degree || !same_system(c.system(), *data.system))
    throw std::invalid_argument("cochain does not belong to this cohomology group");
  if (data.ring == Ring::Z && c.ring() != Ring::Z)
    throw std::invalid_argument("rational cochain given to an integral cohomology group");
}
}  // namespace

ClassCoordinates CohomologyGroup::coordinates(const TwistedCochain& cocycle) const {
  const auto& data = *data_;
  check_membership(data, cocycle);
  require_cocycle(cocycle);

  Integer denominator;
  IntVector y = clear_denominators(cocycle.values(), denominator);
  data.lower.left.apply(std::span<Integer>(y));
  const std::size_t rank_lower = data.lower.rank();

  ClassCoordinates out;
  out.ring = data.ring;
  for (std::size_t k = 0; k < data.torsion.size(); ++k) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), y[data.torsion_positions[k]].get_mpz_t(), data.torsion[k].get_mpz_t());
    out.torsion.push_back(r);
    out.torsion_orders.push_back(data.torsion[k]);
  }
  IntVector tail(y.begin() + static_cast<std::ptrdiff_t>(rank_lower), y.end());
  data.upper.apply_right_inverse(std::span<Integer>(tail));
  const std::size_t rank_upper = data.upper.rank();
  for (std::size_t k = 0; k < data.free_rank; ++k) {
    Rational v(tail[rank_upper + k], denominator);
    v.canonicalize();
    out.free.push_back(v);
  }
  return out;
}

std::optional<TwistedCochain> CohomologyGroup::coboundary_witness(const TwistedCochain& cocycle) const {
  check_membership(*data_, cocycle);
  require_cocycle(cocycle);
  return witness_from_lower(data_->lower, cocycle, data_->ring);
}

TwistedCochain CohomologyGroup::representative(const ClassCoordinates& coordinates) const {
  const auto& data = *data_;
  if (coordinates.free.size() != data.free_rank || coordinates.torsion.size() != data.torsion.size())
    throw std::invalid_argument("representative: coordinate shape mismatch");
  TwistedCochain out(data.system, data.degree, data.ring);
  for (std::size_t k = 0; k < data.free_rank; ++k) out += coordinates.free[k] * data.basis[k];
  for (std::size_t k = 0; k < data.torsion.size(); ++k)
    out += Rational(coordinates.torsion[k]) * data.basis[data.free_rank + k];
  return out;
}

std::optional<TwistedCochain> is_coboundary(const TwistedCochain& c) {
  require_cocycle(c);
  return witness_from_lower(lower_form(c.system(), c.degree()), c, c.ring());
}

// ---------------------------------------------------------------------------
// Cup product with coefficient pairing

std::shared_ptr<const LocalSystem> trivial_line(const std::shared_ptr<const SimplicialComplex>& base) {
  return std::make_shared<const LocalSystem>(LocalSystem::trivial(base, 1));
}

TwistedCochain cup_with_pairing(const TwistedCochain& a, const TwistedCochain& b) {
  if (!is_dual_pair(a.system(), b.system()))
    throw std::invalid_argument("cup_with_pairing: first factor must live in the dual of the second factor's system");
  const auto& base = b.system().base();
  const int p = a.degree();
  const int q = b.degree();
  const std::size_t n = b.rank();
  const Ring ring = (a.ring() == Ring::Z && b.ring() == Ring::Z) ? Ring::Z : Ring::Q;
  TwistedCochain out(trivial_line(b.system().base_ptr()), p + q, ring);
  if (p < 0 || q < 0) return out;
  const auto& simplices = base.simplices(p + q);
  Rational v;
  Integer num, product, da, db;
  IntVector a_int(n), b_int(n);
  auto is_zero = [](std::span<const Rational> x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& r) { return r == 0; });
  };
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    // Front face [v0..vp], back face [vp..v_{p+q}] and the edge [v0, vp].
    std::size_t front = s, back = s;
    for (int d = p + q; d > p; --d) front = base.face(d, front, static_cast<std::size_t>(d));
    auto av = a.value(front);
    if (is_zero(av)) continue;
    for (int d = p + q; d > q; --d) back = base.face(d, back, 0);
    auto bv = b.value(back);
    const IntMatrix* rho = nullptr;
    if (p > 0) {
      std::size_t edge = front;
      for (int d = p; d > 1; --d) edge = base.face(d, edge, 1);
      rho = &b.system().transport(edge);
    }
    // Clear denominators: a = a'/da, b = b'/db with a', b' integral, then
    // v = sum_r a'_r (rho b')_r / (da db).
    mpz_set_ui(da.get_mpz_t(), 1);
    mpz_set_ui(db.get_mpz_t(), 1);
    for (std::size_t k = 0; k < n; ++k) {
      mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), mpq_denref(av[k].get_mpq_t()));
      mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), mpq_denref(bv[k].get_mpq_t()));
    }
    for (std::size_t k = 0; k < n; ++k) {
      mpz_divexact(a_int[k].get_mpz_t(), da.get_mpz_t(), mpq_denref(av[k].get_mpq_t()));
      mpz_mul(a_int[k].get_mpz_t(), a_int[k].get_mpz_t(), mpq_numref(av[k].get_mpq_t()));
      mpz_divexact(b_int[k].get_mpz_t(), db.get_mpz_t(), mpq_denref(bv[k].get_mpq_t()));
      mpz_mul(b_int[k].get_mpz_t(), b_int[k].get_mpz_t(), mpq_numref(bv[k].get_mpq_t()));
    }
    num = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (a_int[r] == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (b_int[k] == 0) continue;
        if (!rho) {
          if (k == r) mpz_addmul(num.get_mpz_t(), a_int[r].get_mpz_t(), b_int[k].get_mpz_t());
          continue;
        }
        const Integer& m = (*rho)(r, k);
        if (m == 0) continue;
        mpz_mul(product.get_mpz_t(), m.get_mpz_t(), b_int[k].get_mpz_t());
        mpz_addmul(num.get_mpz_t(), a_int[r].get_mpz_t(), product.get_mpz_t());
      }
    }
    mpz_mul(da.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
    mpq_set_num(v.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(v.get_mpq_t(), da.get_mpz_t());
    v.canonicalize();
    out.set(s, std::span<const Rational>(&v, 1));
  }
  return out;
}

}  // namespace affinelag
