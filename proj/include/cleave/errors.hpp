#pragma once

#include <stdexcept>
#include <string>

namespace cleave {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct zero_index_error : error {
    zero_index_error() : error("(0,0,0) names no plane orientation") {}
};

struct non_rational_intercepts_error : error {
    explicit non_rational_intercepts_error(const std::string& what) : error(what) {}
};

struct all_parallel_error : error {
    all_parallel_error() : error("all three intercepts are infinite; no plane defined") {}
};

struct malformed_index_error : error {
    explicit malformed_index_error(const std::string& what) : error(what) {}
};

struct not_coplanar_error : error {
    explicit not_coplanar_error(const std::string& what) : error(what) {}
};

struct degenerate_polygon_error : error {
    explicit degenerate_polygon_error(const std::string& what) : error(what) {}
};

struct empty_slice_error : error {
    empty_slice_error() : error("plane does not cut the cube in a polygon") {}
};

struct degenerate_cloud_error : error {
    explicit degenerate_cloud_error(const std::string& what) : error(what) {}
};

struct incompatible_sample_task_error : error {
    explicit incompatible_sample_task_error(const std::string& what) : error(what) {}
};

struct io_error : error {
    explicit io_error(const std::string& what) : error(what) {}
};

struct endpoint_unreachable_error : error {
    explicit endpoint_unreachable_error(const std::string& what) : error(what) {}
};

struct credential_missing_error : error {
    explicit credential_missing_error(const std::string& what) : error(what) {}
};

struct empty_results_error : error {
    empty_results_error() : error("no results to score") {}
};

} // namespace cleave
