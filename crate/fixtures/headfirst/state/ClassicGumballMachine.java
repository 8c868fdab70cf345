package headfirst.state;

public class ClassicGumballMachine extends GumballMachine {
    public ClassicGumballMachine(int gumballs) {
        noQuarterState = new NoQuarterState(this);
        hasQuarterState = new HasQuarterState(this);
        soldState = new SoldState(this);
        state = noQuarterState;
        refill(gumballs);
    }
}
