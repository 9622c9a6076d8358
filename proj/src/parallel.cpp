#include "cotlab/parallel.hpp"

namespace cotlab {

ExecMode& exec_mode() {
    static ExecMode mode = [] {
        if (const char* env = std::getenv("COTLAB_SERIAL"))
            if (env[0] == '1') return ExecMode::Serial;
        return ExecMode::Parallel;
    }();
    return mode;
}

int& thread_count() {
    static int threads = 0;  // 0 = runtime default
    return threads;
}

}  // namespace cotlab
