"""Independent reference values for the Factorial-family squeezing witness and the t = 0 Mandel Q."""
import math
NM=40
def fact_ratio(n): return 0.0 if n<=0 else float(n)
def F(nbar,n): return math.exp(-nbar/2)*nbar**(n/2)/math.sqrt(math.factorial(n))
def sopt(nbar,gt):
    m1=a1=a2=0.0
    for n in range(1,NM+1):
        b=math.sqrt(2*fact_ratio(n)); f2=F(nbar,n)**2
        ca2=0.5*f2*(math.cos(b*gt)-2)**2; cc2=f2*math.sin(b*gt)**2
        m1+=2*ca2*fact_ratio(n-1)+cc2*fact_ratio(n)
        a1+=2*ca2*math.sqrt(fact_ratio(n))+cc2*math.sqrt(fact_ratio(n+1))
        a2+=2*ca2*math.sqrt(fact_ratio(n+1)*fact_ratio(n))+cc2*math.sqrt(fact_ratio(n+2)*fact_ratio(n+1))
    return -2*abs(a2-a1*a1)+2*m1-2*a1*a1
for gt in [0,0.5,1,2.5,5,10,25,42.25]:
    print(gt, repr(sopt(0.3,gt)))
nb=0.5
p=[math.exp(-nb)*nb**n/math.factorial(n) for n in range(60)]
A=sum((n-1)*(n-2)*p[n] for n in range(3,60)); C=sum((n-1)*p[n] for n in range(2,60))
print("Q0", repr(A/C-C))
