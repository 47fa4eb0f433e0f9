#ifndef CTACLUST_ERROR_HPP
#define CTACLUST_ERROR_HPP

#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ctaclust {

enum class ErrorCode {
    // configuration / usage
    InvalidArgument,
    InvalidConfig,
    // ingest
    Io,
    MissingFile,
    DuplicateId,
    EmptyDocument,
    NonUtf8,
    BadManifest,
    // numeric
    AllDocsEmpty,
    EmptyVocabulary,
    DimensionMismatch,
    InvalidP,
    KTooLarge,
    InvalidStop,
    InvalidCut,
    CentroidLinkageNotApplicable,
    DegenerateClustering,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::NonUtf8: return "NonUtf8";
    case ErrorCode::BadManifest: return "BadManifest";
    case ErrorCode::AllDocsEmpty: return "AllDocsEmpty";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InvalidStop: return "InvalidStop";
    case ErrorCode::InvalidCut: return "InvalidCut";
    case ErrorCode::CentroidLinkageNotApplicable: return "CentroidLinkageNotApplicable";
    case ErrorCode::DegenerateClustering: return "DegenerateClustering";
    }
    return "Unknown";
}

/// Process exit status for an error: 1 usage/config, 2 corpus/ingest, 3 numeric.
inline int exit_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidConfig:
    case ErrorCode::CentroidLinkageNotApplicable:
        return 1;
    case ErrorCode::Io:
    case ErrorCode::MissingFile:
    case ErrorCode::DuplicateId:
    case ErrorCode::EmptyDocument:
    case ErrorCode::NonUtf8:
    case ErrorCode::BadManifest:
        return 2;
    default:
        return 3;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, std::string(to_string(code)) + ": " + what);
}

namespace diag {

using WarningHandler = std::function<void(std::string_view)>;

namespace detail {
    inline std::mutex& mutex() {
        static std::mutex m;
        return m;
    }
    inline WarningHandler& handler() {
        static WarningHandler h = [](std::string_view msg) {
            std::cerr << "warning: " << msg << '\n';
        };
        return h;
    }
}

/// Replaces the process-wide warning sink and returns the previous one.
inline WarningHandler set_warning_handler(WarningHandler h) {
    std::lock_guard lock(detail::mutex());
    return std::exchange(detail::handler(), std::move(h));
}

inline void warn(std::string_view msg) {
    std::lock_guard lock(detail::mutex());
    if (detail::handler()) {
        detail::handler()(msg);
    }
}

} // namespace diag

} // namespace ctaclust

#endif
