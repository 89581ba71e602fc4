#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "nqp/instance.hpp"
#include "nqp/reduction.hpp"

namespace nqp {

/// Parses the line-oriented instance format:
///
///     NQP 1
///     DOMAIN int            # or real
///     PSD declared          # or unknown
///     N 1
///     S 3 : 0 1 2
///     Q
///     12
///     C
///     -13
///
/// `#` starts a comment anywhere on a line. Errors carry the line number.
AnyInstance parse_instance(std::string_view text);

/// Canonical text. Real coefficients use the shortest round-trip decimal form.
/// The certificate, when given, is emitted as `#` comment lines after the header.
template <class T>
std::string serialize_instance(const Instance<T>& inst,
                               const std::optional<ReductionCertificate>& certificate = std::nullopt);

std::string serialize_instance(const AnyInstance& inst,
                               const std::optional<ReductionCertificate>& certificate = std::nullopt);

/// Key/value lines ("M 10", "K 5", "L_H -14", ...) describing a certificate.
std::string certificate_block(const ReductionCertificate& certificate);

AnyInstance read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Shortest decimal that round-trips to the same double.
std::string format_real(double v);

}  // namespace nqp
