#include "dbound/random.hpp"

namespace dbound {

Vector Rng::standard_normal_vector(Eigen::Index size) {
  Vector w(size);
  for (Eigen::Index i = 0; i < size; ++i) w[i] = standard_normal();
  return w;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (stream + 0x632be59bd9b4e019ULL));
}

Vector sample_gaussian(const Gaussian& g, Rng& rng) { return GaussianSampler(g)(rng); }

GaussianSampler::GaussianSampler(const Gaussian& g)
    : mean_(g.mean), factor_(cholesky_lower(g.cov)) {}

Vector GaussianSampler::operator()(Rng& rng) const {
  Vector noise(mean_.size());
  Vector out(mean_.size());
  draw(rng, noise, out);
  return out;
}

void GaussianSampler::draw(Rng& rng, Vector& noise, Vector& out) const {
  noise.resize(mean_.size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = rng.standard_normal();
  out.noalias() = factor_.triangularView<Eigen::Lower>() * noise;
  out += mean_;
}

}  // namespace dbound
