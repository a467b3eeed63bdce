#include "concatdioph/search.hpp"

namespace concatdioph::search {

// Expected solution tables, columns eq,b,n,m,k,d, sorted. Kept in sync
// with data/expected_solutions.csv (the on-disk copy of this resource).
const std::string& embedded_expected_csv() {
    static const std::string csv = R"csv(eq,b,n,m,k,d
1,2,0,1,0,1
1,2,2,1,1,1
1,2,2,1,2,1
1,2,3,0,0,1
1,2,4,1,4,2
1,2,4,2,1,1
1,2,4,2,2,1
1,2,5,0,4,2
1,2,6,3,3,2
1,2,7,1,7,4
1,2,7,2,5,3
1,2,8,5,4,2
1,3,2,1,0,1
1,3,3,1,1,1
1,3,3,1,2,1
1,3,4,0,1,1
1,3,4,0,2,1
1,3,5,2,3,1
1,4,3,1,0,1
1,4,4,1,4,1
1,4,5,0,4,1
1,4,6,3,3,1
1,4,7,1,7,2
1,4,7,4,1,1
1,4,7,4,2,1
1,4,8,5,4,1
1,5,4,1,3,1
1,5,5,0,1,1
1,5,5,0,2,1
1,5,6,2,4,1
1,6,4,1,1,1
1,6,4,1,2,1
1,6,5,1,5,1
1,6,6,2,0,1
1,6,7,3,5,1
1,6,8,4,5,1
1,6,13,0,11,3
1,7,4,1,0,1
1,7,7,3,1,1
1,7,7,3,2,1
1,8,5,1,4,1
1,8,6,0,3,1
1,8,7,2,5,1
1,9,5,1,3,1
1,9,6,0,0,1
1,9,7,2,3,1
1,10,5,1,1,1
1,10,5,1,2,1
1,10,6,1,6,1
2,2,2,1,1,1
2,2,2,2,1,1
2,2,4,1,2,2
2,2,4,2,2,2
2,2,4,4,1,1
2,2,5,3,2,2
2,2,5,5,1,1
2,2,8,5,4,3
2,3,3,1,1,1
2,3,3,2,1,1
2,3,4,3,1,1
2,3,5,4,0,1
2,3,9,6,3,2
2,4,4,1,2,1
2,4,4,2,2,1
2,4,5,3,2,1
2,5,4,1,0,1
2,5,4,2,0,1
2,5,5,3,1,1
2,5,6,4,2,1
2,5,7,5,3,1
2,6,4,1,1,1
2,6,4,2,1,1
2,6,8,1,5,2
2,6,8,2,5,2
2,7,5,1,3,1
2,7,5,2,3,1
2,7,6,3,3,1
2,8,5,1,2,1
2,8,5,2,2,1
2,8,6,3,0,1
2,8,8,5,4,1
2,8,14,7,5,2
2,9,5,1,0,1
2,9,5,2,0,1
2,9,7,4,0,1
2,9,8,5,0,1
2,9,9,6,3,1
2,10,5,1,1,1
2,10,5,2,1,1
)csv";
    return csv;
}

} // namespace concatdioph::search
