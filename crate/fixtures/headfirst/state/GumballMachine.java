package headfirst.state;

public class GumballMachine {
    protected State noQuarterState;
    protected State hasQuarterState;
    protected State soldState;
    protected State state;
    private int count;

    public void insertQuarter() {
        state.insertQuarter();
    }

    public void ejectQuarter() {
        state.ejectQuarter();
    }

    public void turnCrank() {
        state.turnCrank();
        state.dispense();
    }

    public void setState(State state) {
        this.state = state;
    }

    public State getState() {
        return state;
    }

    public State getNoQuarterState() {
        return noQuarterState;
    }

    public State getHasQuarterState() {
        return hasQuarterState;
    }

    public State getSoldState() {
        return soldState;
    }

    void releaseBall() {
        if (count > 0) {
            count = count - 1;
        }
    }

    void refill(int gumballs) {
        count = count + gumballs;
    }
}
