"""Brute-force h^0 of the kernel monad over GF(2) with the identity form.

Independent of the package: plain monomial lists and bitset elimination.
"""
from itertools import combinations_with_replacement as cwr
from collections import Counter
def mons(nv, d):
    if d < 0: return []
    out=[]
    for c in cwr(range(nv), d):
        e=[0]*nv
        for i in c: e[i]+=1
        out.append(tuple(e))
    return out
def bimons(n,a,b):
    return [x+y for x in mons(n+1,a) for y in mons(n+1,b)]
def gf2rank(rows):
    rank=0; rows=list(rows); piv={}
    for r in rows:
        while r:
            h=r.bit_length()-1
            if h in piv: r^=piv[h]
            else: piv[h]=r; rank+=1; break
    return rank
def h0(n,q,k,s,t):
    # GF(2), identity form: B = (x_j^q, f^k), f = sum x_i y_i
    tgt = {m:i for i,m in enumerate(bimons(n,s+q,t))}
    f = Counter()
    f[tuple([0]*(2*n+2))]=1
    for _ in range(k):
        g=Counter()
        for m,c in f.items():
            for i in range(n+1):
                e=list(m); e[i]+=1; e[n+1+i]+=1; g[tuple(e)]^=c
        f=g
    cols=[]
    for j in range(n+1):
        for m in bimons(n,s,t):
            e=list(m); e[j]+=q; cols.append(1<<tgt[tuple(e)])
    for m in bimons(n,s+q-k,t-k):
        v=0
        for fm,c in f.items():
            if c: v ^= 1<<tgt[tuple(a+b for a,b in zip(m,fm))]
        cols.append(v)
    ker=len(cols)-gf2rank(cols)
    return ker - len(bimons(n,s,t-q))
