#pragma once

#include <stdexcept>
#include <string>

namespace rankprop {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// matrix construction / validation
struct DuplicatePair : Error { using Error::Error; };
struct IncompleteMatrix : Error { using Error::Error; };
struct ValueOutOfRange : Error { using Error::Error; };
struct AllQuestionsFiltered : Error { using Error::Error; };
struct UnfilteredInput : Error { using Error::Error; };

// propagation / oracle
struct DimensionMismatch : Error { using Error::Error; };
struct TooLargeForDenseOracle : Error { using Error::Error; };

// scoring
struct DegenerateRange : Error { using Error::Error; };
struct UnnormalizedInput : Error { using Error::Error; };
struct NoCorrectAnswers : Error { using Error::Error; };
struct IdCollision : Error { using Error::Error; };

// baselines
struct NonBinaryInput : Error { using Error::Error; };
struct MissingTags : Error { using Error::Error; };
struct ZeroTotalWeight : Error { using Error::Error; };
struct OptimizerDiverged : Error { using Error::Error; };

// analysis
struct LengthMismatch : Error { using Error::Error; };
struct ZeroVariance : Error { using Error::Error; };
struct DegenerateAgreement : Error { using Error::Error; };
struct NotSamePermutationDomain : Error { using Error::Error; };
struct DegenerateVariance : Error { using Error::Error; };
struct InvalidK : Error { using Error::Error; };
struct SingleDataset : Error { using Error::Error; };
struct EmptyCommonQuestionSet : Error { using Error::Error; };
struct NoValidPairs : Error { using Error::Error; };
struct WindowLargerThanN : Error { using Error::Error; };

// synth
struct CountExceedsCategory : Error { using Error::Error; };

// cli / io
struct ParseError : Error { using Error::Error; };
struct OutOfMemoryGuard : Error { using Error::Error; };

}  // namespace rankprop
