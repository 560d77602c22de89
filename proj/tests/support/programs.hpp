#ifndef RESDIST_TESTS_PROGRAMS_HPP
#define RESDIST_TESTS_PROGRAMS_HPP

// Shared analysis inputs used across the unit, acceptance, and benchmark
// suites. Same sources as the files under samples/.

namespace resdist::testdata {

inline constexpr const char* kMatmulC = R"(// Toanalyze: multa(_,_,_,N)
void multa(int a1[MX], int a2[MX], int a3[MX], int n) {
  int i1, i2, i3, d;
  for (i1 = 0; i1 < n; i1++) {
    for (i2 = 0; i2 < n; i2++) {
      d = 0;
      for (i3 = 0; i3 < n; i3++) {
        d = d + a1[i1*n+i3] * a2[i3*n+i2];
      }
      a3[i1*n+i2] = d;
    }
  }
}
)";

inline constexpr const char* kMatrixIr = R"(
for3(i3,step,n) = if(i3>=n) then step else for3(i3+1,step+1,n)
for2(i2,step,n) = if(i2>=n) then step else for2(i2+1,for3(0,step+2,n),n)
for1(i1,step,n) = if(i1>=n) then step else for1(i1+1,for2(0,step,n),n)
tmulta(step,n) = for1(0,step,n)
P(step,n1) = c(step=0)*c(n1=n)
)";

inline constexpr const char* kAddIr = R"(
add(x,y) = if x=<0 then y else add(x-1,y+1)
P(x) = c(1=<x)*c(x=<n)*1/n
Pxy(x,y) = P(x)*P(y)
)";

inline constexpr const char* kSum4Ir = R"(
add(x,y) = if x=0 then y else add(x-1,y+1)
sum4(x,y,z,w) = add(x,add(y,add(z,w)))
tsum4(x,y,z,w) = sum4(x,y,z,w)
P(x) = c(1=<x)*c(x=<6)*1/6
Pxyzw(x,y,z,w) = P(x)*P(y)*P(z)*P(w)
)";

inline constexpr const char* kMontyIr = R"(
finalGuess(guess,price) = if price=guess then 1 else 0
change(guess,price,empty) =
  if price=guess then finalGuess(empty,price) else finalGuess(price,price)
monty(guess,price,empty,strategy) =
  if strategy = 0 then finalGuess(guess,price) else change(guess,price,empty)
Pstrat(strategy) = p*c(1 = strategy) + (1-p)*c(0 = strategy)
Pin(guess,price,empty,strategy) =
  1/18*c(1=<guess)*c(guess=<3)
      *c(1=<price)*c(price=<3)
      *c(1=<empty)*c(empty=<3)
      *c(not(price = empty))
      *Pstrat(strategy)
)";

inline constexpr const char* kDepAddIr = R"(
add(x,y) = x+y
Pxy(x,y) = c(1=<y)*c(y=<3) * c(1=<x)*c(x=<y) * x/10
)";

// Fig-7 shape: the two-segment triangular closed form for add with uniform
// inputs 1..n, used as a semantic reference.
inline constexpr const char* kAddClosedForm =
    "c(2<=out)*c(out<=n)*(1/n*1/n*(out-1)) + "
    "c(1+n<=out)*c(out<=2*n)*(1/n*1/n*(1+2*n-out))";

}  // namespace resdist::testdata

#endif
