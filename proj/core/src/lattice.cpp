#include "stafields/lattice.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stafields/io.hpp"
#include "stafields/threading.hpp"

namespace stf {

void LatticeSpec::validate() const {
  for (int mu = 0; mu < 4; ++mu) {
    if (dims[static_cast<unsigned>(mu)] < 4)
      throw std::invalid_argument(
          "LatticeSpec: all dims must be >= 4 for central stencils");
    if (!(spacing[static_cast<unsigned>(mu)] > 0.0))
      throw std::invalid_argument("LatticeSpec: spacings must be positive");
  }
}

MultivectorField::MultivectorField(const LatticeSpec& spec) : spec_(spec) {
  spec.validate();
  data_.assign(spec.site_count(), Multivector{});
}

std::array<int, 4> MultivectorField::coords(std::size_t flat) const {
  const auto& d = spec_.dims;
  std::array<int, 4> idx{};
  idx[3] = static_cast<int>(flat % static_cast<std::size_t>(d[3]));
  flat /= static_cast<std::size_t>(d[3]);
  idx[2] = static_cast<int>(flat % static_cast<std::size_t>(d[2]));
  flat /= static_cast<std::size_t>(d[2]);
  idx[1] = static_cast<int>(flat % static_cast<std::size_t>(d[1]));
  idx[0] = static_cast<int>(flat / static_cast<std::size_t>(d[1]));
  return idx;
}

SpacetimePoint MultivectorField::point(const std::array<int, 4>& idx) const {
  SpacetimePoint x{};
  for (int mu = 0; mu < 4; ++mu)
    x[static_cast<unsigned>(mu)] = spec_.spacing[static_cast<unsigned>(mu)] *
                                   idx[static_cast<unsigned>(mu)];
  return x;
}

MultivectorField MultivectorField::sample(
    const LatticeSpec& spec,
    const std::function<Multivector(const SpacetimePoint&)>& fn) {
  MultivectorField f(spec);
  parallel_for_blocks(f.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      f.data_[i] = fn(f.point(f.coords(i)));
  });
  return f;
}

MultivectorField MultivectorField::sample(const LatticeSpec& spec,
                                          const AnalyticField& a) {
  return sample(spec,
                [&](const SpacetimePoint& x) { return a.value(x); });
}

MultivectorField& MultivectorField::operator+=(const MultivectorField& o) {
  if (!(spec_ == o.spec_))
    throw std::invalid_argument("field arithmetic requires matching specs");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

MultivectorField& MultivectorField::operator-=(const MultivectorField& o) {
  if (!(spec_ == o.spec_))
    throw std::invalid_argument("field arithmetic requires matching specs");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

MultivectorField& MultivectorField::operator*=(double s) {
  for (auto& m : data_) m *= s;
  return *this;
}

double MultivectorField::linf() const {
  // max reduction is order-independent; still block it for thread reuse
  double best = 0.0;
  for (const auto& m : data_) best = std::max(best, linf_norm(m));
  return best;
}

double MultivectorField::max_site_norm() const {
  double best = 0.0;
  for (const auto& m : data_) best = std::max(best, coeff_norm(m));
  return best;
}

namespace {

struct Strides {
  std::size_t s[4];
  int n[4];
};

Strides make_strides(const LatticeSpec& spec) {
  Strides st{};
  const auto& d = spec.dims;
  st.n[0] = d[0];
  st.n[1] = d[1];
  st.n[2] = d[2];
  st.n[3] = d[3];
  st.s[3] = 1;
  st.s[2] = static_cast<std::size_t>(d[3]);
  st.s[1] = st.s[2] * static_cast<std::size_t>(d[2]);
  st.s[0] = st.s[1] * static_cast<std::size_t>(d[1]);
  return st;
}

// Flat index of the site displaced by +/-1 along axis mu, with periodic wrap.
inline std::size_t neighbor(std::size_t flat, const Strides& st,
                            const std::array<int, 4>& idx, int mu, int step) {
  const int n = st.n[mu];
  const int i = idx[static_cast<unsigned>(mu)];
  int j = i + step;
  if (j < 0) j += n;
  if (j >= n) j -= n;
  return flat + (static_cast<std::size_t>(j) - static_cast<std::size_t>(i)) *
                    st.s[mu];
}

enum class DiracPart { kFull, kCurl, kDiv };

// Shared Dirac-operator kernel.  For each axis, forms the central
// difference, multiplies by the reciprocal basis vector blade-by-blade, and
// routes each product into a grade-raising or grade-lowering accumulator
// (multiplying a blade by gamma_mu always shifts its grade by exactly one).
// The full operator returns raising + lowering, so
// curl4(f) + div4(f) == vector_derivative(f) holds bit-for-bit.
MultivectorField dirac_apply(const MultivectorField& f, DiracPart part) {
  MultivectorField out(f.spec());
  const Strides st = make_strides(f.spec());
  const auto& h = f.spec().spacing;
  parallel_for_blocks(f.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto idx = f.coords(i);
      Multivector up;    // grade(source) + 1
      Multivector down;  // grade(source) - 1
      for (int mu = 0; mu < 4; ++mu) {
        const Multivector diff =
            f[neighbor(i, st, idx, mu, +1)] - f[neighbor(i, st, idx, mu, -1)];
        // gamma^mu scale: +1 timelike, -1 spacelike reciprocal
        const double scale = (mu == 0 ? 0.5 : -0.5) /
                             h[static_cast<unsigned>(mu)];
        // left-multiplication by the single blade gamma_mu
        const int gi = 1 + mu;
        for (int j = 0; j < 16; ++j) {
          const double v = diff[j];
          if (v == 0.0) continue;
          const auto cell = detail::kCayley[static_cast<unsigned>(gi)]
                                           [static_cast<unsigned>(j)];
          const bool raises = blade_grade(cell.index) > blade_grade(j);
          Multivector& acc = raises ? up : down;
          acc[cell.index] += (cell.sign > 0 ? v : -v) * scale;
        }
      }
      switch (part) {
        case DiracPart::kFull: out[i] = up + down; break;
        case DiracPart::kCurl: out[i] = up; break;
        case DiracPart::kDiv: out[i] = down; break;
      }
    }
  });
  return out;
}

}  // namespace

MultivectorField vector_derivative(const MultivectorField& f) {
  return dirac_apply(f, DiracPart::kFull);
}

MultivectorField curl4(const MultivectorField& f) {
  return dirac_apply(f, DiracPart::kCurl);
}

MultivectorField div4(const MultivectorField& f) {
  return dirac_apply(f, DiracPart::kDiv);
}

std::pair<double, double> bianchi_residuals(const MultivectorField& f) {
  const MultivectorField cc = curl4(curl4(f));
  const MultivectorField dd = div4(div4(f));
  return {cc.linf(), dd.linf()};
}

MultivectorField dalembertian(const MultivectorField& f) {
  MultivectorField out(f.spec());
  const Strides st = make_strides(f.spec());
  const auto& h = f.spec().spacing;
  parallel_for_blocks(f.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto idx = f.coords(i);
      Multivector acc;
      for (int mu = 0; mu < 4; ++mu) {
        const double hm = h[static_cast<unsigned>(mu)];
        const double sign = (mu == 0) ? 1.0 : -1.0;
        const Multivector second = f[neighbor(i, st, idx, mu, +1)] -
                                   f[i] * 2.0 +
                                   f[neighbor(i, st, idx, mu, -1)];
        acc += second * (sign / (hm * hm));
      }
      out[i] = acc;
    }
  });
  return out;
}

void write_field_csv(const MultivectorField& f, const std::string& csv_path,
                     const std::string& sidecar_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open for writing: " + csv_path);
  csv << "t,x,y,z";
  for (int b = 0; b < 16; ++b) csv << ',' << kBladeName[static_cast<unsigned>(b)];
  csv << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = f.coords(i);
    csv << idx[0] << ',' << idx[1] << ',' << idx[2] << ',' << idx[3];
    for (int b = 0; b < 16; ++b) csv << ',' << format_double(f[i][b]);
    csv << '\n';
  }
  if (!csv) throw std::runtime_error("write failed: " + csv_path);

  nlohmann::ordered_json j;
  j["dims"] = f.spec().dims;
  j["spacing"] = f.spec().spacing;
  std::ofstream side(sidecar_path);
  if (!side)
    throw std::runtime_error("cannot open for writing: " + sidecar_path);
  side << j.dump(2) << '\n';
}

MultivectorField read_field_csv(const std::string& csv_path,
                                const std::string& sidecar_path) {
  std::ifstream side(sidecar_path);
  if (!side) throw std::runtime_error("cannot open: " + sidecar_path);
  nlohmann::json j;
  side >> j;
  LatticeSpec spec;
  spec.dims = j.at("dims").get<std::array<int, 4>>();
  spec.spacing = j.at("spacing").get<std::array<double, 4>>();
  MultivectorField f(spec);

  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open: " + csv_path);
  std::string line;
  if (!std::getline(csv, line))
    throw std::runtime_error("empty field CSV: " + csv_path);
  {
    std::string want = "t,x,y,z";
    for (int b = 0; b < 16; ++b)
      want += std::string(",") + kBladeName[static_cast<unsigned>(b)];
    if (line != want)
      throw std::runtime_error("unexpected field CSV header: " + line);
  }
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::array<double, 20> cells{};
    std::size_t cell = 0;
    const char* p = line.c_str();
    while (*p) {
      if (cell >= cells.size())
        throw std::runtime_error("field CSV row has too many cells: row " +
                                 std::to_string(rows));
      char* end = nullptr;
      cells[cell] = std::strtod(p, &end);
      if (end == p)
        throw std::runtime_error("bad numeric cell in field CSV row " +
                                 std::to_string(rows));
      ++cell;
      p = end;
      if (*p == ',') ++p;
      else if (*p != '\0')
        throw std::runtime_error("malformed field CSV row " +
                                 std::to_string(rows));
    }
    if (cell != 20)
      throw std::runtime_error("field CSV row has wrong arity: " +
                               std::to_string(cell));
    const std::size_t flat =
        f.index(static_cast<int>(cells[0]), static_cast<int>(cells[1]),
                static_cast<int>(cells[2]), static_cast<int>(cells[3]));
    if (flat != rows)
      throw std::runtime_error("field CSV rows out of site order");
    for (int b = 0; b < 16; ++b) f[flat][b] = cells[static_cast<unsigned>(4 + b)];
    ++rows;
  }
  if (rows != f.size())
    throw std::runtime_error("field CSV row count mismatch");
  return f;
}

}  // namespace stf
