#include "formlab/sweep.hpp"

#include <exception>

namespace formlab {

void for_each_index(int n, ExecMode mode, const std::function<void(int)>& fn) {
    if (mode == ExecMode::serial) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

} // namespace formlab
