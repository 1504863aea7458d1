#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "digitdim/certify.hpp"
#include "digitdim/errors.hpp"

namespace digitdim {

GridSpec GridSpec::make(int base, int level, const Rational& delta)
{
    if (level < 1)
        throw ParameterError("grid level L must be >= 1");
    if (delta <= 0)
        throw ParameterError("grid spacing delta must be positive");
    const Integer period(power(base, static_cast<unsigned long>(level)));
    const Rational inverse = Rational(1) / (Rational(2 * period) * delta);
    const Integer last = ceil(inverse);
    if (!last.fits_slong_p() || last > Integer(1) << 40)
        throw ParameterError("grid with " + last.get_str() + " points is too large");
    return GridSpec{level, delta, last.get_si() + 1};
}

Enclosure lipschitz_bound(const DigitSystem& sys, int level, Precision prec)
{
    if (level < 1)
        throw ParameterError("L must be >= 1");
    const Integer period = power(sys.base(), static_cast<unsigned long>(level));
    const Rational factor(Integer(2 * period * (period - 1)));
    return Enclosure::pi(prec) * factor;
}

namespace {

struct ChunkResult {
    Enclosure max;
    Enclosure min;
};

} // namespace

GridExtrema grid_extrema(const DigitSystem& sys, const GridSpec& grid, const EvalOptions& opts)
{
    if (grid.count < 1)
        throw ParameterError("empty grid");
    const std::int64_t chunk_limit = std::max<std::int64_t>(1, opts.max_chunk);
    const unsigned workers = std::max(1U, opts.workers);
    std::int64_t chunks = (grid.count + chunk_limit - 1) / chunk_limit;
    chunks = std::min<std::int64_t>(grid.count, std::max<std::int64_t>(chunks, workers));

    std::vector<std::optional<ChunkResult>> results(static_cast<std::size_t>(chunks));
    std::atomic<std::int64_t> next{0};
    std::atomic<std::int64_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            for (std::int64_t c = next++; c < chunks; c = next++) {
                const std::int64_t begin = grid.count * c / chunks;
                const std::int64_t end = grid.count * (c + 1) / chunks;
                std::optional<ChunkResult> acc;
                for (std::int64_t k = begin; k < end; ++k) {
                    Enclosure value = grid_sum(sys, grid.level, grid.abscissa(k), opts.precision, opts.symbol);
                    if (!acc)
                        acc = ChunkResult{value, value};
                    else {
                        acc->max = max_endpoints(acc->max, value);
                        acc->min = min_endpoints(acc->min, value);
                    }
                }
                results[static_cast<std::size_t>(c)] = std::move(acc);
                const std::int64_t finished = done += (end - begin);
                if (opts.progress) {
                    std::lock_guard lock(progress_mutex);
                    opts.progress(finished, grid.count);
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = chunks;
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);

    std::optional<ChunkResult> total;
    for (auto& r : results) {
        if (!r)
            continue;
        if (!total)
            total = std::move(r);
        else {
            total->max = max_endpoints(total->max, r->max);
            total->min = min_endpoints(total->min, r->min);
        }
    }
    return GridExtrema{std::move(total->max), std::move(total->min), grid.count};
}

} // namespace digitdim
