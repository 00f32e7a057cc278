#pragma once

#include <stdexcept>
#include <string>

namespace leech {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct bad_format : error {
    using error::error;
};
struct singular_matrix : error {
    using error::error;
};
struct mixed_radicand : error {
    using error::error;
};
struct domain_error : error {
    using error::error;
};
struct resource_limit : error {
    using error::error;
};
struct not_integral : error {
    using error::error;
};
struct not_even : error {
    using error::error;
};
struct not_unimodular : error {
    using error::error;
};
struct unknown_diagram : error {
    using error::error;
};
struct type_mismatch : error {
    using error::error;
};
struct no_circumsphere : error {
    using error::error;
};
struct degenerate_span : error {
    using error::error;
};
struct wrong_shape : error {
    using error::error;
};
struct no_distinguished_vertex : error {
    using error::error;
};
struct no_extension : error {
    using error::error;
};
struct budget_exceeded : error {
    using error::error;
};
struct search_exhausted : error {
    using error::error;
};

}  // namespace leech
