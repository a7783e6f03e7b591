#include "couette/spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "couette/core/error.hpp"

namespace couette::spectral::fft {

namespace {

enum class Shape { plane, rows, line };
using Key = std::tuple<Shape, int, int, int>;

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(Shape shape, int nx, int ny, Direction dir) {
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const Key key{shape, nx, ny, sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> scratch(static_cast<std::size_t>(nx) * ny);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    // ESTIMATE keeps plan choice independent of timing, so output bits are reproducible.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    switch (shape) {
      case Shape::plane:
        plan = fftw_plan_dft_2d(nx, ny, buf, buf, sign, flags);
        break;
      case Shape::rows: {
        int n[] = {ny};
        plan = fftw_plan_many_dft(1, n, nx, buf, nullptr, 1, ny, buf, nullptr, 1, ny, sign, flags);
        break;
      }
      case Shape::line:
        plan = fftw_plan_dft_1d(ny, buf, buf, sign, flags);
        break;
    }
    if (plan == nullptr) throw NumericalError("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(fftw_plan plan, std::span<Complex> data) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void transform_2d(std::span<Complex> data, int nx, int ny, Direction dir) {
  require(data.size() == static_cast<std::size_t>(nx) * ny, "fft: buffer size mismatch");
  run(cache().get(Shape::plane, nx, ny, dir), data);
}

void transform_rows(std::span<Complex> data, int nx, int ny, Direction dir) {
  require(data.size() == static_cast<std::size_t>(nx) * ny, "fft: buffer size mismatch");
  run(cache().get(Shape::rows, nx, ny, dir), data);
}

void transform_1d(std::span<Complex> data, Direction dir) {
  const int n = static_cast<int>(data.size());
  require(n > 0, "fft: empty buffer");
  run(cache().get(Shape::line, 1, n, dir), data);
}

}  // namespace couette::spectral::fft
