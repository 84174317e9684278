#ifndef SMT_PARALLEL_HPP
#define SMT_PARALLEL_HPP

#include <exception>
#include <thread>
#include <vector>

namespace smt {

// Index-parallel map with results written by slot; the reduction order is
// fixed by the index so results are schedule-independent. thread_cleanup
// runs once per worker before it exits (e.g. to release per-thread library
// caches).
template <typename Fn, typename Cleanup>
void parallel_for_indexed(long n, Fn&& fn, Cleanup&& thread_cleanup) {
    unsigned hw = std::thread::hardware_concurrency();
    long nt = (long)(hw ? hw : 1);
    if (nt > n) nt = n > 0 ? n : 1;
    if (nt <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> ts;
    std::vector<std::exception_ptr> errs(nt);
    for (long t = 0; t < nt; ++t) {
        ts.emplace_back([&, t]() {
            try {
                for (long i = t; i < n; i += nt) fn(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
            thread_cleanup();
        });
    }
    for (auto& th : ts) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

template <typename Fn>
void parallel_for_indexed(long n, Fn&& fn) {
    parallel_for_indexed(n, std::forward<Fn>(fn), [] {});
}

}  // namespace smt

#endif
