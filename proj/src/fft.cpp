#include "zapsim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace zapsim::fft
{
namespace
{

class PlanCache
{
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, Sign sign)
    {
        const std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;

        // Planning touches the scratch buffer only; FFTW_ESTIMATE never
        // executes, and FFTW_UNALIGNED lets std::vector storage be passed to
        // fftw_execute_dft later.
        std::vector<std::complex<double>> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        const int dir = sign == Sign::Negative ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, dir,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, Sign>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

} // namespace

void transform(std::span<std::complex<double>> data, Sign sign)
{
    if (data.size() < 2)
        return;
    fftw_plan plan = cache().get(data.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

} // namespace zapsim::fft
