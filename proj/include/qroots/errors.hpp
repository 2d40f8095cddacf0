#pragma once

#include <stdexcept>
#include <string>

namespace qroots {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroPolynomialError : Error {
    ZeroPolynomialError() : Error("polynomial has no nonzero coefficient") {}
};

struct ConstantPolynomialError : Error {
    ConstantPolynomialError() : Error("polynomial is constant after normalization") {}
};

struct NotARootError : Error {
    explicit NotARootError(double residual)
        : Error("deflation target is not a root (residual " + std::to_string(residual) + ")") {}
};

struct DegreeUnderflowError : Error {
    DegreeUnderflowError() : Error("deflation would drop below degree zero with a nonzero remainder") {}
};

struct NotNormalizedError : Error {
    NotNormalizedError() : Error("state amplitudes are not normalized") {}
};

struct IndexOutOfRangeError : Error {
    explicit IndexOutOfRangeError(int qubit) : Error("qubit index out of range: " + std::to_string(qubit)) {}
};

struct NonUnitaryError : Error {
    NonUnitaryError() : Error("gate matrix is not unitary") {}
};

struct CoefficientOutOfRangeError : Error {
    explicit CoefficientOutOfRangeError(double a)
        : Error("rotation coefficient outside [-1, 1]: " + std::to_string(a)) {}
};

struct ScaleOutOfRangeError : Error {
    ScaleOutOfRangeError() : Error("scaling gate entry outside the rotation range") {}
};

struct StructureMismatchError : Error {
    explicit StructureMismatchError(double deviation)
        : Error("post-selected operator is not proportional to the modified companion matrix (max deviation " +
                std::to_string(deviation) + ")") {}
};

struct ZeroSuccessError : Error {
    ZeroSuccessError() : Error("post-selection success probability vanished") {}
};

struct NegativeUnderRootError : Error {
    explicit NegativeUnderRootError(double value)
        : Error("magnitude estimate went negative under the root: " + std::to_string(value)) {}
};

struct DominanceTooWeakError : Error {
    DominanceTooWeakError() : Error("no iteration showed a usable probability imbalance") {}
};

struct NoSignalError : Error {
    NoSignalError() : Error("joint probabilities below the signal floor") {}
};

struct InvalidConfigError : Error {
    explicit InvalidConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace qroots
