#ifndef OVDIAM_GUARD_ERRORS_HH
#define OVDIAM_GUARD_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace ovdiam
{
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

#define OVDIAM_ERROR(name) \
    class name : public Error \
    { \
        public: \
            using Error::Error; \
    }

    OVDIAM_ERROR(NoCommonCoordinate);
    OVDIAM_ERROR(GenerationFailed);
    OVDIAM_ERROR(StackTooLong);
    OVDIAM_ERROR(WrongK);
    OVDIAM_ERROR(VertexMissing);
    OVDIAM_ERROR(IllegalHalfOp);
    OVDIAM_ERROR(InvalidIntermediate);
    OVDIAM_ERROR(PathConstructionFailed);
    OVDIAM_ERROR(BudgetExceeded);
    OVDIAM_ERROR(Disconnected);
    OVDIAM_ERROR(ParseError);
    OVDIAM_ERROR(PreconditionFailed);

#undef OVDIAM_ERROR
}

#endif
